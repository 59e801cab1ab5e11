#ifndef K3MODULI_NUMERICS_HPP
#define K3MODULI_NUMERICS_HPP

#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "qforms.hpp"

namespace k3moduli {

/// tau = (-b + sqrt(D)) / (2a) in the upper half plane.
struct CMPoint {
    Int a = 1;
    Int b = 0;
    Int D = -4;

    static CMPoint of(const QuadForm& q) { return {q.a, q.b, q.discriminant()}; }
    static CMPoint of(const FormClass& c) { return of(c.rep()); }

    double imag_tau() const { return std::sqrt(static_cast<double>(-D)) / (2.0 * static_cast<double>(a)); }
};

namespace detail {

inline void mul_truncated(std::vector<mpz_class>& out, const std::vector<mpz_class>& x, const std::vector<mpz_class>& y)
{
    const std::size_t n = x.size();
    std::vector<mpz_class> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t k = 0; i + k < n; ++k)
            if (y[k] != 0)
                r[i + k] += x[i] * y[k];
    }
    out = std::move(r);
}

/// Coefficients c_0 .. c_{n-1} of j(q) - 1/q = 744 + 196884 q + ...,
/// from j = E4^3 / Delta.
inline std::vector<mpz_class> j_series(std::size_t n)
{
    const std::size_t m = n + 1; // q*j = E4^3 * q / Delta needs m terms
    std::vector<mpz_class> e4(m, 0);
    e4[0] = 1;
    for (std::size_t k = 1; k < m; ++k) {
        mpz_class sigma3 = 0;
        for (std::size_t d = 1; d <= k; ++d)
            if (k % d == 0)
                sigma3 += mpz_class(static_cast<unsigned long>(d)) * d * d;
        e4[k] = 240 * sigma3;
    }
    std::vector<mpz_class> e4cubed;
    mul_truncated(e4cubed, e4, e4);
    mul_truncated(e4cubed, e4cubed, e4);

    // prod (1 - q^k) by Euler's pentagonal theorem
    std::vector<mpz_class> eta(m, 0);
    eta[0] = 1;
    for (long k = 1;; ++k) {
        std::size_t p1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
        std::size_t p2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
        if (p1 >= m)
            break;
        int sign = (k % 2 == 0) ? 1 : -1;
        eta[p1] += sign;
        if (p2 < m)
            eta[p2] += sign;
    }
    std::vector<mpz_class> e8, e16, e24;
    mul_truncated(e8, eta, eta);   // ^2
    mul_truncated(e8, e8, e8);     // ^4
    mul_truncated(e8, e8, e8);     // ^8
    mul_truncated(e16, e8, e8);    // ^16
    mul_truncated(e24, e16, e8);   // ^24 = Delta / q

    std::vector<mpz_class> inv(m, 0);
    inv[0] = 1;
    for (std::size_t k = 1; k < m; ++k) {
        mpz_class s = 0;
        for (std::size_t i = 1; i <= k; ++i)
            s += e24[i] * inv[k - i];
        inv[k] = -s;
    }
    std::vector<mpz_class> qj;
    mul_truncated(qj, e4cubed, inv);
    return {qj.begin() + 1, qj.end()};
}

} // namespace detail

/// Process-wide cache of j-coefficients. Readers take a snapshot under a
/// shared lock; growth replaces the snapshot under the exclusive lock.
class JCoefficientCache {
public:
    static JCoefficientCache& instance()
    {
        static JCoefficientCache cache;
        return cache;
    }

    /// Snapshot holding at least `n` coefficients c_0 .. c_{n-1}.
    std::shared_ptr<const std::vector<mpz_class>> at_least(std::size_t n)
    {
        {
            std::shared_lock lock(mutex_);
            if (coeffs_ && coeffs_->size() >= n)
                return coeffs_;
        }
        std::unique_lock lock(mutex_);
        if (coeffs_ && coeffs_->size() >= n)
            return coeffs_;
        std::size_t target = std::max<std::size_t>({n, 64, coeffs_ ? 2 * coeffs_->size() : 0});
        coeffs_ = std::make_shared<const std::vector<mpz_class>>(detail::j_series(target));
        return coeffs_;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return coeffs_ ? coeffs_->size() : 0;
    }

private:
    mutable std::shared_mutex mutex_;
    std::shared_ptr<const std::vector<mpz_class>> coeffs_;
};

inline constexpr std::size_t default_series_cap = 20000;

/// Maximum q-series length; K3MODULI_SERIES_CAP overrides the default.
inline std::size_t series_cap()
{
    if (const char* env = std::getenv("K3MODULI_SERIES_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return default_series_cap;
}

/// Number of q-expansion terms so that the tail, bounded with
/// c_n < exp(4 pi sqrt n), stays below 10^-(digits + 5).
inline std::size_t series_length(const CMPoint& p, int digits)
{
    if (p.a <= 0 || p.D >= 0)
        throw std::invalid_argument("k3moduli: CM point must lie in the upper half plane");
    const double log_q = -std::numbers::pi * std::sqrt(static_cast<double>(-p.D)) / static_cast<double>(p.a);
    const double target = -(digits + 5) * std::log(10.0);
    const std::size_t cap = series_cap();
    for (std::size_t n = 1; n <= cap; ++n) {
        const double next = static_cast<double>(n + 1);
        const double log_ratio = 2.0 * std::numbers::pi / std::sqrt(next) + log_q;
        if (log_ratio >= 0)
            continue;
        const double log_term = 4.0 * std::numbers::pi * std::sqrt(next) + next * log_q;
        const double log_tail = log_term - std::log1p(-std::exp(log_ratio));
        if (log_tail < target)
            return n;
    }
    throw PrecisionUnsupported("q-series needs more than " + std::to_string(cap) + " terms at " + std::to_string(digits)
                               + " digits");
}

/// j(tau) by its q-expansion, evaluated by Horner's rule.
inline BigComplex j_invariant(const CMPoint& p, int digits)
{
    const std::size_t n = series_length(p, digits);
    auto coeffs = JCoefficientCache::instance().at_least(n + 1);
    const mpfr_prec_t prec = bits_for_digits(digits);

    // q depends on b only modulo 2a
    const Int b = arith::mod(p.b + p.a, 2 * p.a) - p.a;
    const BigFloat pi = BigFloat::pi(prec);
    const BigFloat radius = (-(pi * BigFloat(-p.D, prec).sqrt()) / BigFloat(p.a, prec)).exp();
    const BigFloat angle = -(pi * BigFloat(b, prec)) / BigFloat(p.a, prec);
    const BigFloat cs = angle.cos(), sn = angle.sin();
    const BigComplex q{radius * cs, radius * sn};
    const BigFloat inv_radius = BigFloat(1, prec) / radius;
    const BigComplex q_inv{inv_radius * cs, -(inv_radius * sn)};

    BigComplex acc{BigFloat((*coeffs)[n], prec), BigFloat(prec)};
    for (std::size_t k = n - 1; k >= 1; --k) {
        acc = acc * q;
        acc.re += BigFloat((*coeffs)[k], prec);
    }
    acc = acc * q;
    acc.re += BigFloat((*coeffs)[0], prec);
    return acc + q_inv;
}

inline BigComplex j_invariant(const FormClass& c, int digits) { return j_invariant(CMPoint::of(c), digits); }

/// 10^exponent at the given precision.
inline BigFloat power_of_ten(int exponent, mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(std::abs(exponent)), MPFR_RNDN);
    if (exponent < 0)
        return BigFloat(1, prec) / r;
    return r;
}

/// Nearest integer to z, provided z lies within tol of it.
inline mpz_class recognize_integer(const BigComplex& z, const BigFloat& tol)
{
    mpz_class n = z.re.round();
    BigFloat residual = (z.re - BigFloat(n, z.re.prec())).abs();
    if (!(residual < tol) || !(z.im.abs() < tol))
        throw NotNearInteger("value " + z.re.to_string(30) + " + " + z.im.to_string(5) + "i");
    return n;
}

/// Distance of z from the integer recognize_integer would return.
inline BigFloat rounding_residual(const BigComplex& z)
{
    BigFloat re = (z.re - BigFloat(z.re.round(), z.re.prec())).abs();
    BigFloat im = z.im.abs();
    return re < im ? im : re;
}

/// Coefficients of prod (x - r_i), lowest degree first; the last is 1.
inline std::vector<BigComplex> poly_from_roots(const std::vector<BigComplex>& roots)
{
    mpfr_prec_t prec = 64;
    for (const auto& r : roots)
        prec = std::max(prec, r.prec());
    std::vector<BigComplex> coeffs{BigComplex{BigFloat(1, prec), BigFloat(prec)}};
    for (const auto& r : roots) {
        std::vector<BigComplex> next(coeffs.size() + 1, BigComplex(prec));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] = next[i] - r * coeffs[i];
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

} // namespace k3moduli

#endif
