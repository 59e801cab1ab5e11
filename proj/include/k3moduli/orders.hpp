#ifndef K3MODULI_ORDERS_HPP
#define K3MODULI_ORDERS_HPP

#include <array>
#include <utility>
#include <vector>

#include "qforms.hpp"

namespace k3moduli {

/// The order O_{K,f} of conductor f in Q(sqrt d_K).
struct QuadOrder {
    Int d_K = -4;
    Int f = 1;

    Int disc() const { return arith::narrow(static_cast<Wide>(f) * f * d_K); }

    friend bool operator==(const QuadOrder&, const QuadOrder&) = default;
};

inline QuadOrder order_of_disc(Int disc)
{
    if (!arith::is_valid_negative_disc(disc))
        throw BadDiscriminant(std::to_string(disc));
    for (Int f = arith::isqrt(-disc); f >= 1; --f) {
        Int f2 = f * f;
        if (disc % f2 == 0 && arith::is_fundamental(disc / f2))
            return {disc / f2, f};
    }
    throw BadDiscriminant(std::to_string(disc)); // unreachable for valid discriminants
}

/// An element (x + y*sqrt(d_K)) / den of K.
struct KElement {
    Int x = 0;
    Int y = 0;
    Int den = 1;
};

/// A rank-2 Z-lattice in K, kept in Hermite normal form: it is spanned by
/// A/den and (B + C*sqrt(d_K))/den with A, C > 0, 0 <= B < A and
/// gcd(A, B, C, den) = 1. `order()` is its multiplier ring.
class IdealLattice {
public:
    /// Z-span of the given numerators over the common denominator `den`.
    static IdealLattice from_generators(Int d_K, const std::vector<std::pair<Wide, Wide>>& gens, Wide den)
    {
        if (den <= 0)
            throw DegenerateLattice("non-positive denominator");
        std::vector<std::pair<Wide, Wide>> v(gens);
        // Euclid on the sqrt(d_K) coordinate
        for (;;) {
            std::size_t pivot = v.size();
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i].second != 0 && (pivot == v.size() || abs128(v[i].second) < abs128(v[pivot].second)))
                    pivot = i;
            if (pivot == v.size())
                throw DegenerateLattice("generators have no irrational part");
            bool done = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i == pivot || v[i].second == 0)
                    continue;
                Wide q = v[i].second / v[pivot].second;
                v[i].first -= q * v[pivot].first;
                v[i].second -= q * v[pivot].second;
                if (v[i].second != 0)
                    done = false;
            }
            if (done) {
                std::swap(v[0], v[pivot]);
                break;
            }
        }
        Wide bx = v[0].first, cy = v[0].second;
        if (cy < 0) {
            bx = -bx;
            cy = -cy;
        }
        Wide a = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            a = gcd128(a, v[i].first);
        if (a == 0)
            throw DegenerateLattice("generators span a rank-1 module");
        bx %= a;
        if (bx < 0)
            bx += a;
        Wide g = gcd128(gcd128(a, bx), gcd128(cy, den));
        IdealLattice L;
        L.d_K_ = d_K;
        L.a_ = arith::narrow(a / g);
        L.b_ = arith::narrow(bx / g);
        L.c_ = arith::narrow(cy / g);
        L.den_ = arith::narrow(den / g);
        L.order_ = {d_K, L.multiplier_conductor()};
        return L;
    }

    /// The order O_{K,f} itself, spanned by 1 and f*omega_K.
    static IdealLattice unit(const QuadOrder& o)
    {
        return from_generators(o.d_K, {{2, 0}, {static_cast<Wide>(o.f) * o.d_K, o.f}}, 2);
    }

    Int d_K() const { return d_K_; }
    const QuadOrder& order() const { return order_; }
    std::array<KElement, 2> basis() const { return {KElement{a_, 0, den_}, KElement{b_, c_, den_}}; }
    Int hnf_a() const { return a_; }
    Int hnf_b() const { return b_; }
    Int hnf_c() const { return c_; }
    Int den() const { return den_; }

    bool contains(const KElement& e) const
    {
        // e = t1 * A/den + t2 * (B + C sqrt d)/den with t1, t2 integers
        Wide y = static_cast<Wide>(e.y) * den_;
        Wide x = static_cast<Wide>(e.x) * den_;
        Wide ed = static_cast<Wide>(e.den);
        if (y % (ed * c_) != 0)
            return false;
        Wide t2 = y / (ed * c_);
        Wide rest = x - t2 * b_ * ed;
        return rest % (ed * a_) == 0;
    }

    /// Smallest n > 0 with n * omega_K * L contained in L.
    Int multiplier_conductor() const
    {
        Wide lcm = 1;
        const Wide d = d_K_;
        for (auto [x, y] : {std::pair<Wide, Wide>{a_, 0}, std::pair<Wide, Wide>{b_, c_}}) {
            // omega_K * (x + y sqrt d) = (d(x + y) + (x + d y) sqrt d) / 2
            Wide X = d * (x + y), Y = x + d * y;
            // coordinates: t2 = Y / (2C), t1 = (X C - B Y) / (2 A C)
            for (auto [num, dd] : {std::pair<Wide, Wide>{Y, 2 * static_cast<Wide>(c_)},
                                   std::pair<Wide, Wide>{X * c_ - static_cast<Wide>(b_) * Y, 2 * static_cast<Wide>(a_) * c_}}) {
                Wide g = gcd128(num, dd);
                Wide q = dd / g;
                lcm = lcm / gcd128(lcm, q) * q;
            }
        }
        return arith::narrow(lcm);
    }

    friend bool operator==(const IdealLattice& l, const IdealLattice& r)
    {
        return l.d_K_ == r.d_K_ && l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_ && l.den_ == r.den_;
    }

private:
    static Wide abs128(Wide v) { return v < 0 ? -v : v; }
    static Wide gcd128(Wide a, Wide b)
    {
        a = abs128(a);
        b = abs128(b);
        while (b != 0) {
            Wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    Int d_K_ = -4;
    Int a_ = 1, b_ = 0, c_ = 1, den_ = 1;
    QuadOrder order_;
};

/// The lattice spanned by a and (-b + sqrt D)/2.
inline IdealLattice form_to_ideal(const FormClass& cls)
{
    if (!cls.is_primitive())
        throw NotPrimitive(to_string(cls.rep()));
    QuadOrder o = order_of_disc(cls.disc());
    return IdealLattice::from_generators(o.d_K, {{2 * static_cast<Wide>(cls.a()), 0}, {-static_cast<Wide>(cls.b()), o.f}}, 2);
}

/// Norm form N(x alpha - y beta) / N(L) for a positively oriented basis,
/// reduced. Its discriminant is that of the multiplier ring of L.
inline FormClass ideal_to_form(const IdealLattice& L)
{
    const Wide A = L.hnf_a(), B = L.hnf_b(), C = L.hnf_c();
    const Wide F = L.order().f, d = L.d_K();
    const Wide den2 = 2 * A * C;
    Wide a = A * A * F, b = -2 * A * B * F, c = (B * B - d * C * C) * F;
    if (a % den2 != 0 || b % den2 != 0 || c % den2 != 0)
        throw DegenerateLattice("norm form is not integral");
    return class_of(arith::narrow(a / den2), arith::narrow(b / den2), arith::narrow(c / den2));
}

/// Product lattice: span of the four pairwise products, in Hermite normal form.
inline IdealLattice multiply(const IdealLattice& l1, const IdealLattice& l2)
{
    if (l1.d_K() != l2.d_K())
        throw FieldMismatch(std::to_string(l1.d_K()) + " vs " + std::to_string(l2.d_K()));
    const Wide d = l1.d_K();
    std::vector<std::pair<Wide, Wide>> gens;
    for (const KElement& u : l1.basis())
        for (const KElement& v : l2.basis())
            gens.emplace_back(static_cast<Wide>(u.x) * v.x + static_cast<Wide>(u.y) * v.y * d,
                              static_cast<Wide>(u.x) * v.y + static_cast<Wide>(u.y) * v.x);
    return IdealLattice::from_generators(l1.d_K(), gens, static_cast<Wide>(l1.den()) * l2.den());
}

/// Generalized composition of classes of discriminants f1^2 d_K and
/// f2^2 d_K; the result lies in C(gcd(f1, f2)^2 d_K).
inline FormClass compose_general(const FormClass& x, const FormClass& y)
{
    QuadOrder ox = order_of_disc(x.disc()), oy = order_of_disc(y.disc());
    if (ox.d_K != oy.d_K)
        throw FieldMismatch(std::to_string(x.disc()) + " vs " + std::to_string(y.disc()));
    return ideal_to_form(multiply(form_to_ideal(x), form_to_ideal(y)));
}

/// C(O_{K,f}) -> C(O_{K,f'}) for f' | f, i.e. composition with the
/// principal form of the target order.
inline FormClass reduction_map(const FormClass& x, Int target_f)
{
    QuadOrder o = order_of_disc(x.disc());
    if (target_f <= 0 || o.f % target_f != 0)
        throw BadConductor(std::to_string(target_f) + " does not divide " + std::to_string(o.f));
    if (target_f == o.f)
        return x;
    return compose_general(x, principal_class(QuadOrder{o.d_K, target_f}.disc()));
}

} // namespace k3moduli

#endif
