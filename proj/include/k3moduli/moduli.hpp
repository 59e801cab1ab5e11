#ifndef K3MODULI_MODULI_HPP
#define K3MODULI_MODULI_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "classgroup.hpp"
#include "k3.hpp"
#include "numerics.hpp"

namespace k3moduli {

/// Gal(H/Q) for the ring class field H of disc0, modelled as
/// C(disc0) x| <iota> with iota acting by inversion. Element index
/// `c + h*e` stands for (c, iota^e) and acts on classes by q -> c * iota^e(q).
class GaloisModel {
public:
    using Element = std::size_t;

    GaloisModel(ClassGroup group, ClassIndex q0) : group_(std::move(group)), q0_(q0)
    {
        for (ClassIndex t : two_torsion(group_))
            subgroup_mk_.push_back(t);
        std::vector<Element> gens(subgroup_mk_);
        gens.push_back(alpha());
        subgroup_mq_ = generated_by(gens);
    }

    const ClassGroup& classes() const { return group_; }
    ClassIndex q0() const { return q0_; }
    std::size_t h() const { return group_.size(); }
    std::size_t order() const { return 2 * h(); }

    Element make(ClassIndex c, bool flip) const { return c + (flip ? h() : 0); }
    ClassIndex class_part(Element x) const { return x % h(); }
    bool flips(Element x) const { return x >= h(); }

    Element identity() const { return 0; }
    Element iota() const { return make(group_.identity(), true); }
    /// The involution fixing the lattice: q -> q0 * q^-1.
    Element alpha() const { return make(q0_, true); }

    Element multiply(Element x, Element y) const
    {
        ClassIndex c2 = class_part(y);
        if (flips(x))
            c2 = group_.inverse(c2);
        return make(group_.op(class_part(x), c2), flips(x) != flips(y));
    }

    Element inverse(Element x) const
    {
        if (flips(x))
            return x; // every (c, iota) is an involution
        return make(group_.inverse(class_part(x)), false);
    }

    ClassIndex act(Element x, ClassIndex q) const
    {
        if (flips(x))
            q = group_.inverse(q);
        return group_.op(class_part(x), q);
    }

    std::vector<Element> generated_by(const std::vector<Element>& gens) const
    {
        std::set<Element> seen{identity()};
        std::vector<Element> frontier{identity()};
        while (!frontier.empty()) {
            std::vector<Element> next;
            for (Element x : frontier)
                for (Element g : gens) {
                    Element y = multiply(x, g);
                    if (seen.insert(y).second)
                        next.push_back(y);
                }
            frontier = std::move(next);
        }
        return {seen.begin(), seen.end()};
    }

    bool is_normal(const std::vector<Element>& sub) const
    {
        std::set<Element> s(sub.begin(), sub.end());
        for (Element g = 0; g < order(); ++g)
            for (Element x : sub)
                if (!s.count(multiply(multiply(g, x), inverse(g))))
                    return false;
        return true;
    }

    /// C[2], fixing M_K.
    const std::vector<Element>& subgroup_mk() const { return subgroup_mk_; }
    /// <C[2], alpha>, fixing M_Q.
    const std::vector<Element>& subgroup_mq() const { return subgroup_mq_; }

private:
    ClassGroup group_;
    ClassIndex q0_;
    std::vector<Element> subgroup_mk_;
    std::vector<Element> subgroup_mq_;
};

inline GaloisModel galois_model(const TranscLattice& t)
{
    ClassGroup g = enumerate(t.disc0());
    ClassIndex q0 = g.require_index(t.q0());
    return GaloisModel(std::move(g), q0);
}

/// [M_K : K] = [M_Q : Q], the order of the genus of C(disc0).
inline Int moduli_degree(const TranscLattice& t) { return genus_order(enumerate(t.disc0())); }

inline bool mq_is_galois(const GaloisModel& model) { return model.is_normal(model.subgroup_mq()); }
inline bool mq_is_galois(const TranscLattice& t) { return mq_is_galois(galois_model(t)); }

/// (twice_u + twice_v * sqrt(d_K)) / 2.
struct KNumber {
    mpz_class twice_u;
    mpz_class twice_v;

    friend bool operator==(const KNumber&, const KNumber&) = default;
};

inline std::string to_string(const KNumber& z, Int d_K)
{
    auto half = [](const mpz_class& twice) {
        if (twice % 2 == 0)
            return mpz_class(twice / 2).get_str();
        return twice.get_str() + "/2";
    };
    if (z.twice_v == 0)
        return half(z.twice_u);
    std::string s;
    if (z.twice_u != 0)
        s = half(z.twice_u) + (z.twice_v > 0 ? "+" : "");
    return s + half(z.twice_v) + "*sqrt(" + std::to_string(d_K) + ")";
}

/// Recognizes z as u + v*sqrt(d_K) with u, v half-integers.
inline KNumber recognize_k_number(const BigComplex& z, Int d_K, const BigFloat& tol)
{
    const mpfr_prec_t prec = z.prec();
    const BigFloat two(2, prec);
    const BigFloat root = BigFloat(-d_K, prec).sqrt();
    BigComplex u2{two * z.re, BigFloat(prec)};
    BigComplex v2{(two * z.im) / root, BigFloat(prec)};
    return {recognize_integer(u2, tol), recognize_integer(v2, tol)};
}

inline constexpr int max_precision_doublings = 8;
inline constexpr int max_resolvent_level = 10;

inline int default_digits(std::size_t h) { return 30 + 10 * static_cast<int>(h); }

/// Tolerance used when rounding to integers and half-integers.
inline BigFloat recognition_tolerance(int digits) { return power_of_ten(-(digits / 4), bits_for_digits(digits)); }

/// Runs `attempt(digits)`, doubling digits whenever it reports a rounding
/// failure (NotNearInteger), at most max_precision_doublings times.
template <class Attempt>
auto with_precision(int start_digits, Attempt&& attempt)
{
    int digits = start_digits;
    for (int k = 0; k <= max_precision_doublings; ++k, digits *= 2) {
        try {
            return attempt(digits);
        } catch (const NotNearInteger&) {
        }
    }
    throw PrecisionExhausted("rounding failed up to " + std::to_string(digits / 2) + " digits");
}

namespace detail {

/// Rounds the coefficients of prod (x - r) to integers, refusing when the
/// coefficient size leaves too little headroom at this precision.
inline std::vector<mpz_class> integer_polynomial(const std::vector<BigComplex>& roots, int digits, BigFloat* max_residual = nullptr)
{
    double log_bound = 0;
    for (const auto& r : roots)
        log_bound += std::max(0.0, r.log10_abs()) + 0.30103; // log10(1 + |r|) <= log10|r| + log10 2
    if (log_bound + 7 > 0.75 * digits)
        throw NotNearInteger("coefficients need about " + std::to_string(static_cast<int>(log_bound)) + " digits");
    const BigFloat tol = recognition_tolerance(digits);
    std::vector<mpz_class> out;
    BigFloat worst(bits_for_digits(digits));
    for (const auto& c : poly_from_roots(roots)) {
        out.push_back(recognize_integer(c, tol));
        BigFloat r = rounding_residual(c);
        if (worst < r)
            worst = r;
    }
    if (max_residual)
        *max_residual = worst;
    return out;
}

inline std::vector<KNumber> k_polynomial(const std::vector<BigComplex>& roots, Int d_K, int digits)
{
    double log_bound = 0;
    for (const auto& r : roots)
        log_bound += std::max(0.0, r.log10_abs()) + 0.30103;
    if (log_bound + 7 > 0.75 * digits)
        throw NotNearInteger("coefficients need about " + std::to_string(static_cast<int>(log_bound)) + " digits");
    const BigFloat tol = recognition_tolerance(digits);
    std::vector<KNumber> out;
    for (const auto& c : poly_from_roots(roots))
        out.push_back(recognize_k_number(c, d_K, tol));
    return out;
}

inline bool separated(const std::vector<BigComplex>& values, int digits)
{
    double scale = 0;
    for (const auto& v : values)
        scale = std::max(scale, v.log10_abs());
    const double threshold = scale - digits / 2.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t k = i + 1; k < values.size(); ++k)
            if ((values[i] - values[k]).log10_abs() <= threshold)
                return false;
    return true;
}

/// phi_0 = j, phi_1 = j^2, phi_2 = j^3, phi_k = (j + k - 2)^2 for k >= 3.
inline BigComplex resolvent(const BigComplex& j, int level)
{
    switch (level) {
    case 0: return j;
    case 1: return j * j;
    case 2: return j * j * j;
    default: {
        BigComplex s = j;
        s.re += BigFloat(level - 2, j.prec());
        return s * s;
    }
    }
}

inline std::vector<IndexSet> cosets_of(const ClassGroup& g, const IndexSet& subgroup)
{
    std::vector<IndexSet> out;
    std::vector<bool> seen(g.size(), false);
    for (ClassIndex i = 0; i < g.size(); ++i) {
        if (seen[i])
            continue;
        IndexSet c = coset(g, i, subgroup);
        for (ClassIndex k : c)
            seen[k] = true;
        out.push_back(std::move(c));
    }
    return out;
}

/// Everything the moduli computations need at one working precision.
struct ModuliSnapshot {
    int digits = 0;
    std::vector<mpz_class> class_poly;
    BigFloat class_poly_residual;
    std::vector<BigComplex> j_values;
    std::vector<KNumber> mk_poly;
    std::vector<mpz_class> mq_poly;
    std::vector<BigComplex> mk_roots;
    std::vector<BigComplex> mq_roots;
    int mk_level = 0;
    int mq_level = 0;
    bool mq_uses_fixed_coset = false;
};

inline std::vector<BigComplex> j_values(const ClassGroup& g, int digits)
{
    std::vector<BigComplex> out;
    out.reserve(g.size());
    for (const auto& c : g.classes())
        out.push_back(j_invariant(c, digits));
    return out;
}

/// Coset traces e_c of the resolvent, one per coset of C[2].
inline std::vector<BigComplex> coset_traces(const std::vector<IndexSet>& cosets, const std::vector<BigComplex>& js, int level)
{
    std::vector<BigComplex> out;
    for (const auto& c : cosets) {
        BigComplex s(js.front().prec());
        for (ClassIndex i : c)
            s += resolvent(js[i], level);
        out.push_back(std::move(s));
    }
    return out;
}

struct MqGenerator {
    std::vector<BigComplex> conjugates;
    bool uses_fixed_coset;
};

/// Conjugates over Q of an element fixed by C[2] and alpha: q -> q0 q^-1.
inline MqGenerator mq_conjugates(const ClassGroup& g, ClassIndex q0, const std::vector<IndexSet>& cosets,
                                 const std::vector<BigComplex>& traces, Int d_K)
{
    std::vector<std::size_t> coset_of(g.size());
    for (std::size_t k = 0; k < cosets.size(); ++k)
        for (ClassIndex i : cosets[k])
            coset_of[i] = k;
    auto alpha_coset = [&](std::size_t k) { return coset_of[g.op(q0, g.inverse(cosets[k].front()))]; };

    for (std::size_t k = 0; k < cosets.size(); ++k)
        if (alpha_coset(k) == k)
            return {traces, true}; // e_c is alpha-fixed; its conjugates are all coset traces

    // theta = omega e_c + conj(omega) e_{alpha(c)}, omega = (d_K + sqrt d_K) / 2
    const mpfr_prec_t prec = traces.front().prec();
    const BigFloat half_root = BigFloat(-d_K, prec).sqrt() / BigFloat(2, prec);
    const BigComplex omega{BigFloat(d_K, prec) / BigFloat(2, prec), half_root};
    std::vector<BigComplex> out;
    for (std::size_t k = 0; k < cosets.size(); ++k) {
        std::size_t partner = coset_of[g.op(cosets[k].front(), q0)];
        out.push_back(omega * traces[k] + omega.conj() * traces[partner]);
    }
    return {out, false};
}

inline ModuliSnapshot compute_snapshot(const ClassGroup& g, ClassIndex q0, int digits)
{
    const Int d_K = order_of_disc(g.disc()).d_K;
    ModuliSnapshot s;
    s.digits = digits;
    s.j_values = j_values(g, digits);
    s.class_poly = integer_polynomial(s.j_values, digits, &s.class_poly_residual);

    const auto cosets = cosets_of(g, two_torsion(g));
    bool mk_done = false, mq_done = false;
    for (int level = 0; level <= max_resolvent_level && !(mk_done && mq_done); ++level) {
        auto traces = coset_traces(cosets, s.j_values, level);
        if (!mk_done && separated(traces, digits)) {
            s.mk_level = level;
            s.mk_roots = traces;
            mk_done = true;
        }
        if (!mq_done) {
            MqGenerator gen = mq_conjugates(g, q0, cosets, traces, d_K);
            if (separated(gen.conjugates, digits)) {
                s.mq_level = level;
                s.mq_roots = std::move(gen.conjugates);
                s.mq_uses_fixed_coset = gen.uses_fixed_coset;
                mq_done = true;
            }
        }
    }
    if (!mk_done || !mq_done)
        throw ResolventDegenerate("all resolvents collide for disc " + std::to_string(g.disc()));
    s.mk_poly = k_polynomial(s.mk_roots, d_K, digits);
    s.mq_poly = integer_polynomial(s.mq_roots, digits);
    return s;
}

} // namespace detail

struct ClassPolynomial {
    Int disc = 0;
    std::vector<mpz_class> coeffs; ///< lowest degree first, monic
    std::vector<BigComplex> roots; ///< j-values in class order
    int digits = 0;
    BigFloat max_residual;
};

/// Hilbert/ring class polynomial of discriminant `disc`, starting at
/// `digits` (default 30 + 10h) and doubling on rounding failure.
inline ClassPolynomial class_polynomial(Int disc, std::optional<int> digits = std::nullopt)
{
    ClassGroup g = enumerate(disc);
    return with_precision(digits.value_or(default_digits(g.size())), [&](int d) {
        ClassPolynomial p;
        p.disc = disc;
        p.roots = detail::j_values(g, d);
        p.coeffs = detail::integer_polynomial(p.roots, d, &p.max_residual);
        p.digits = d;
        return p;
    });
}

struct KModuliPolynomial {
    std::vector<KNumber> coeffs; ///< over K, lowest degree first
    std::vector<BigComplex> roots;
    int resolvent_level = 0;
    int digits = 0;
};

struct QModuliPolynomial {
    std::vector<mpz_class> coeffs;
    std::vector<BigComplex> roots;
    int resolvent_level = 0;
    bool uses_fixed_coset = false;
    int digits = 0;
};

inline KModuliPolynomial field_of_K_moduli(const TranscLattice& t, std::optional<int> digits = std::nullopt)
{
    ClassGroup g = enumerate(t.disc0());
    ClassIndex q0 = g.require_index(t.q0());
    auto s = with_precision(digits.value_or(default_digits(g.size())), [&](int d) { return detail::compute_snapshot(g, q0, d); });
    return {s.mk_poly, s.mk_roots, s.mk_level, s.digits};
}

inline QModuliPolynomial field_of_Q_moduli(const TranscLattice& t, std::optional<int> digits = std::nullopt)
{
    ClassGroup g = enumerate(t.disc0());
    ClassIndex q0 = g.require_index(t.q0());
    auto s = with_precision(digits.value_or(default_digits(g.size())), [&](int d) { return detail::compute_snapshot(g, q0, d); });
    return {s.mq_poly, s.mq_roots, s.mq_level, s.mq_uses_fixed_coset, s.digits};
}

struct ModuliReport {
    TranscLattice lattice = TranscLattice::scaled(1, principal_class(-4));
    Int disc = 0, disc0 = 0, m = 0, d_K = 0;
    Int h = 0;
    Int g = 0;
    std::vector<Int> elementary_divisors;
    std::size_t two_torsion_size = 0;
    Int degree_MK_over_K = 0;
    Int degree_MQ_over_Q = 0;
    std::vector<TranscLattice> orbit;
    bool MQ_is_galois = false;
    std::vector<mpz_class> class_polynomial;
    std::vector<KNumber> MK_min_poly;
    std::vector<mpz_class> MQ_min_poly;
    int MK_resolvent_level = 0;
    int MQ_resolvent_level = 0;
    bool MQ_uses_fixed_coset = false;
    int precision_used = 0;
    std::vector<std::string> warnings;
};

inline ModuliReport moduli_report(const TranscLattice& t, std::optional<int> digits = std::nullopt)
{
    ClassGroup group = enumerate(t.disc0());
    const ClassIndex q0 = group.require_index(t.q0());
    const int start = digits.value_or(default_digits(group.size()));
    auto snap = with_precision(start, [&](int d) { return detail::compute_snapshot(group, q0, d); });

    ModuliReport r;
    r.lattice = t;
    r.disc = t.disc();
    r.disc0 = t.disc0();
    r.m = t.m();
    r.d_K = cm_field(t);
    r.h = static_cast<Int>(group.size());
    r.g = genus_order(group);
    r.elementary_divisors = structure(group);
    r.two_torsion_size = two_torsion(group).size();
    r.orbit = galois_orbit(t, group);
    GaloisModel model(group, q0);
    r.MQ_is_galois = mq_is_galois(model);
    const std::size_t coset_count = model.order() / model.subgroup_mq().size();
    r.degree_MK_over_K = static_cast<Int>(group.size() / model.subgroup_mk().size());
    r.degree_MQ_over_Q = static_cast<Int>(coset_count);
    r.class_polynomial = snap.class_poly;
    r.MK_min_poly = snap.mk_poly;
    r.MQ_min_poly = snap.mq_poly;
    r.MK_resolvent_level = snap.mk_level;
    r.MQ_resolvent_level = snap.mq_level;
    r.MQ_uses_fixed_coset = snap.mq_uses_fixed_coset;
    r.precision_used = snap.digits;

    if (snap.digits != start)
        r.warnings.push_back("precision raised from " + std::to_string(start) + " to " + std::to_string(snap.digits) + " digits");
    if (snap.mk_level > 0)
        r.warnings.push_back("M_K generator uses fallback resolvent level " + std::to_string(snap.mk_level));
    if (snap.mq_level > 0)
        r.warnings.push_back("M_Q generator uses fallback resolvent level " + std::to_string(snap.mq_level));

    // consistency of the group theory with the numerics
    const auto deg = [](const auto& poly) { return static_cast<Int>(poly.size()) - 1; };
    if (r.degree_MK_over_K != r.g || r.degree_MQ_over_Q != r.g || deg(r.class_polynomial) != r.h
        || deg(r.MK_min_poly) != r.g || deg(r.MQ_min_poly) != r.g || static_cast<Int>(r.orbit.size()) != r.g)
        throw std::logic_error("k3moduli: inconsistent moduli report for disc " + std::to_string(r.disc));
    return r;
}

} // namespace k3moduli

#endif
