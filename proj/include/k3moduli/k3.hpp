#ifndef K3MODULI_K3_HPP
#define K3MODULI_K3_HPP

#include <array>
#include <vector>

#include "classgroup.hpp"
#include "numerics.hpp"
#include "orders.hpp"

namespace k3moduli {

/// Row-major 2x2 integer matrix.
using Gram = std::array<std::array<Int, 2>, 2>;

/// Even positive-definite rank-2 lattice, the transcendental lattice of a
/// singular K3 surface. Gram matrix (2a b; b 2c) <-> form (a, b, c) = m * q0.
class TranscLattice {
public:
    static TranscLattice from_gram(const Gram& g)
    {
        if (g[0][1] != g[1][0])
            throw NotSymmetric("off-diagonal entries differ");
        if (arith::mod(g[0][0], 2) != 0 || arith::mod(g[1][1], 2) != 0)
            throw NotEven("diagonal entries must be even");
        QuadForm f{g[0][0] / 2, g[0][1], g[1][1] / 2};
        if (!f.is_positive_definite())
            throw NotPositiveDefinite("gram matrix is not positive definite");
        auto [m, q0] = primitive_part(f);
        return TranscLattice(g, m, class_of(q0));
    }

    /// The lattice m * q0 with the reduced representative as its Gram matrix.
    static TranscLattice scaled(Int m, const FormClass& q0)
    {
        if (m <= 0)
            throw std::invalid_argument("k3moduli: index of primitivity must be positive");
        if (!q0.is_primitive())
            throw NotPrimitive(to_string(q0.rep()));
        return TranscLattice(gram_of(m, q0.rep()), m, q0);
    }

    const Gram& gram() const { return gram_; }
    Gram canonical_gram() const { return gram_of(m_, q0_.rep()); }
    QuadForm form() const { return {gram_[0][0] / 2, gram_[0][1], gram_[1][1] / 2}; }
    Int m() const { return m_; }
    const FormClass& q0() const { return q0_; }
    Int disc() const { return arith::narrow(static_cast<Wide>(m_) * m_ * q0_.disc()); }
    Int disc0() const { return q0_.disc(); }

    TranscLattice scaled_by(Int n) const { return scaled(m_ * n, q0_); }

    /// Isometry classes agree iff (m, reduced primitive part) agree.
    friend bool operator==(const TranscLattice& x, const TranscLattice& y) { return x.m_ == y.m_ && x.q0_ == y.q0_; }
    friend bool operator<(const TranscLattice& x, const TranscLattice& y)
    {
        if (x.m_ != y.m_)
            return x.m_ < y.m_;
        if (x.q0_.disc() != y.q0_.disc())
            return x.q0_.disc() > y.q0_.disc();
        return x.q0_ < y.q0_;
    }

private:
    TranscLattice(const Gram& g, Int m, const FormClass& q0) : gram_(g), m_(m), q0_(q0) {}

    static Gram gram_of(Int m, const QuadForm& q)
    {
        return {{{2 * m * q.a, m * q.b}, {m * q.b, 2 * m * q.c}}};
    }

    Gram gram_;
    Int m_;
    FormClass q0_;
};

/// Fundamental discriminant of the CM field Q(sqrt(disc T)).
inline Int cm_field(const TranscLattice& t) { return order_of_disc(t.disc()).d_K; }

/// A = E_tau x E_{a tau + b}: q1 is the primitive part in C(D0), q2 the
/// principal class of C(D).
struct SMDecomposition {
    CMPoint tau;
    FormClass q1;
    FormClass q2;
};

inline SMDecomposition shioda_mitani(const TranscLattice& t)
{
    return {CMPoint::of(t.q0()), t.q0(), principal_class(t.disc())};
}

/// T(X^sigma) = m * (g^-2 * q0) for a Galois element with class-group
/// fingerprint g in C(disc0).
inline TranscLattice conjugate_lattice(const TranscLattice& t, const FormClass& g)
{
    if (g.disc() != t.disc0())
        throw DiscriminantMismatch(std::to_string(g.disc()) + " vs " + std::to_string(t.disc0()));
    FormClass g_inv = inverse(g);
    return TranscLattice::scaled(t.m(), compose(compose(g_inv, g_inv), t.q0()));
}

/// Off-diagonal sign flip; acts as inversion on the primitive part.
inline TranscLattice complex_conjugate(const TranscLattice& t)
{
    return TranscLattice::scaled(t.m(), inverse(t.q0()));
}

/// The scaled genus { m * t : t in q0 * C(D0)^2 }, in class order.
inline std::vector<TranscLattice> galois_orbit(const TranscLattice& t, const ClassGroup& g)
{
    std::vector<TranscLattice> out;
    for (ClassIndex i : genus_of(g, t.q0()))
        out.push_back(TranscLattice::scaled(t.m(), g[i]));
    return out;
}

inline std::vector<TranscLattice> galois_orbit(const TranscLattice& t) { return galois_orbit(t, enumerate(t.disc0())); }

} // namespace k3moduli

#endif
