#ifndef K3MODULI_QFORMS_HPP
#define K3MODULI_QFORMS_HPP

#include <compare>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "arith.hpp"
#include "errors.hpp"

namespace k3moduli {

/// Integral binary quadratic form a*x^2 + b*x*y + c*y^2.
struct QuadForm {
    Int a = 1;
    Int b = 0;
    Int c = 1;

    Int discriminant() const { return arith::narrow(static_cast<Wide>(b) * b - static_cast<Wide>(4) * a * c); }

    bool is_positive_definite() const { return a > 0 && static_cast<Wide>(b) * b - static_cast<Wide>(4) * a * c < 0; }

    Wide evaluate(Int x, Int y) const
    {
        return static_cast<Wide>(a) * x * x + static_cast<Wide>(b) * x * y + static_cast<Wide>(c) * y * y;
    }

    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const QuadForm& q)
{
    return os << '(' << q.a << ',' << q.b << ',' << q.c << ')';
}

inline std::string to_string(const QuadForm& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

inline Int discriminant(const QuadForm& q) { return q.discriminant(); }

/// Substitution matrix [[p, q], [r, s]] acting as Q(p x + q y, r x + s y).
struct Transform {
    Int p = 1, q = 0, r = 0, s = 1;

    Int determinant() const { return arith::narrow(static_cast<Wide>(p) * s - static_cast<Wide>(q) * r); }

    Transform operator*(const Transform& o) const
    {
        auto m = [](Int x, Int y, Int z, Int w) {
            return arith::narrow(static_cast<Wide>(x) * y + static_cast<Wide>(z) * w);
        };
        return {m(p, o.p, q, o.r), m(p, o.q, q, o.s), m(r, o.p, s, o.r), m(r, o.q, s, o.s)};
    }

    static Transform identity() { return {}; }

    friend bool operator==(const Transform&, const Transform&) = default;
};

/// The form Q(p x + q y, r x + s y).
inline QuadForm apply(const QuadForm& f, const Transform& t)
{
    Wide a = f.evaluate(t.p, t.r);
    Wide c = f.evaluate(t.q, t.s);
    Wide b = 2 * static_cast<Wide>(f.a) * t.p * t.q + static_cast<Wide>(f.b) * (static_cast<Wide>(t.p) * t.s + static_cast<Wide>(t.q) * t.r)
        + 2 * static_cast<Wide>(f.c) * t.r * t.s;
    return {arith::narrow(a), arith::narrow(b), arith::narrow(c)};
}

/// |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
inline bool is_reduced(const QuadForm& q)
{
    Int ab = arith::abs(q.b);
    if (!(ab <= q.a && q.a <= q.c))
        return false;
    if ((ab == q.a || q.a == q.c) && q.b < 0)
        return false;
    return true;
}

/// Proper-equivalence class, identified by its reduced representative.
class FormClass {
public:
    FormClass() = default;

    const QuadForm& rep() const { return rep_; }
    Int disc() const { return disc_; }
    Int a() const { return rep_.a; }
    Int b() const { return rep_.b; }
    Int c() const { return rep_.c; }

    bool is_primitive() const { return arith::gcd(rep_.a, rep_.b, rep_.c) == 1; }

    /// Fixed by inversion: b = 0, a = b or a = c.
    bool is_ambiguous() const { return rep_.b == 0 || rep_.a == rep_.b || rep_.a == rep_.c; }

    friend bool operator==(const FormClass& x, const FormClass& y) { return x.rep_ == y.rep_; }

    /// Order used for class listings: by a, then |b|, positive b first.
    friend bool operator<(const FormClass& x, const FormClass& y)
    {
        auto key = [](const QuadForm& q) { return std::make_tuple(q.a, arith::abs(q.b), q.b < 0, q.c); };
        return key(x.rep_) < key(y.rep_);
    }

    /// Wraps a form that is already reduced; anything else is rejected.
    static FormClass from_reduced(const QuadForm& q)
    {
        if (!q.is_positive_definite())
            throw NotPositiveDefinite(to_string(q));
        if (!is_reduced(q))
            throw std::invalid_argument("k3moduli: form is not reduced: " + to_string(q));
        return FormClass(q);
    }

private:
    explicit FormClass(const QuadForm& q) : rep_(q), disc_(q.discriminant()) {}

    QuadForm rep_{1, 0, 1};
    Int disc_ = -4;

    friend struct ReduceResult reduce(const QuadForm&);
};

inline std::ostream& operator<<(std::ostream& os, const FormClass& c) { return os << c.rep(); }

struct ReduceResult {
    FormClass cls;
    Transform transform; ///< apply(input, transform) == cls.rep()
};

/// Gauss reduction with a tracked SL2(Z) transform.
inline ReduceResult reduce(const QuadForm& input)
{
    if (!input.is_positive_definite())
        throw NotPositiveDefinite(to_string(input));

    QuadForm f = input;
    Transform t;
    const Transform swap{0, -1, 1, 0};

    auto normalize = [&] {
        Int k = arith::floor_div(f.a - f.b, 2 * f.a);
        if (k != 0) {
            Transform step{1, k, 0, 1};
            f = apply(f, step);
            t = t * step;
        }
    };

    normalize();
    while (f.a > f.c) {
        f = apply(f, swap);
        t = t * swap;
        normalize();
    }
    if (f.a == f.c && f.b < 0) {
        f = apply(f, swap);
        t = t * swap;
    }
    return {FormClass(f), t};
}

inline FormClass class_of(const QuadForm& q) { return reduce(q).cls; }
inline FormClass class_of(Int a, Int b, Int c) { return reduce({a, b, c}).cls; }

inline bool is_primitive(const QuadForm& q) { return arith::gcd(q.a, q.b, q.c) == 1; }

struct PrimitivePart {
    Int m;       ///< index of primitivity
    QuadForm q0; ///< q = m * q0
};

inline PrimitivePart primitive_part(const QuadForm& q)
{
    if (!q.is_positive_definite())
        throw NotPositiveDefinite(to_string(q));
    Int m = arith::gcd(q.a, q.b, q.c);
    return {m, {q.a / m, q.b / m, q.c / m}};
}

inline QuadForm principal_form(Int disc)
{
    if (!arith::is_valid_negative_disc(disc))
        throw BadDiscriminant(std::to_string(disc));
    if (arith::mod(disc, 4) == 0)
        return {1, 0, -disc / 4};
    return {1, 1, (1 - disc) / 4};
}

inline FormClass principal_class(Int disc) { return FormClass::from_reduced(principal_form(disc)); }

inline FormClass inverse(const FormClass& x)
{
    const QuadForm& q = x.rep();
    return class_of(q.a, -q.b, q.c);
}

namespace detail {

/// Equivalent form whose leading coefficient is coprime to `modulus`.
inline QuadForm with_leading_coprime(const QuadForm& f, Int modulus)
{
    for (Int bound = 1;; bound *= 2) {
        for (Int x = -bound; x <= bound; ++x) {
            for (Int y = 0; y <= bound; ++y) {
                if (arith::gcd(x, y) != 1)
                    continue;
                Int value = arith::narrow(f.evaluate(x, y));
                if (arith::gcd(value, modulus) != 1)
                    continue;
                // complete (x, y) to a determinant-one matrix [[x, r], [y, s]]
                auto [g, u, v] = arith::xgcd(x, y);
                (void)g;
                Transform t{x, -v, y, u};
                return apply(f, t);
            }
        }
    }
}

} // namespace detail

/// Dirichlet composition of two primitive classes of one discriminant,
/// returned reduced.
inline FormClass compose(const FormClass& x, const FormClass& y)
{
    if (x.disc() != y.disc())
        throw DiscriminantMismatch(std::to_string(x.disc()) + " vs " + std::to_string(y.disc()));
    if (!x.is_primitive() || !y.is_primitive())
        throw NotPrimitive(to_string(x.rep()) + " * " + to_string(y.rep()));

    const Int disc = x.disc();
    const QuadForm& f1 = x.rep();
    QuadForm f2 = y.rep();
    if (arith::gcd(f1.a, f2.a, (f1.b + f2.b) / 2) != 1)
        f2 = detail::with_leading_coprime(f2, arith::narrow(static_cast<Wide>(2) * f1.a * disc));

    const Int a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b;
    const Int n = (b1 + b2) / 2;
    auto [g1, u1, v1] = arith::xgcd(a1, a2);
    auto [g, s, w] = arith::xgcd(g1, n);
    (void)g;
    const Wide u = static_cast<Wide>(s) * u1;
    const Wide v = static_cast<Wide>(s) * v1;

    const Wide a3 = static_cast<Wide>(a1) * a2;
    const Wide m = 2 * a3;
    Wide bb = (u % m) * ((static_cast<Wide>(a1) * b2) % m) % m + (v % m) * ((static_cast<Wide>(a2) * b1) % m) % m
        + static_cast<Wide>(w % m) * (((static_cast<Wide>(b1) * b2 + disc) / 2) % m) % m;
    bb %= m;
    if (bb < 0)
        bb += m;
    if (bb > a3)
        bb -= m;
    const Wide cc = (bb * bb - disc) / (4 * a3);
    return class_of(arith::narrow(a3), arith::narrow(bb), arith::narrow(cc));
}

} // namespace k3moduli

#endif
