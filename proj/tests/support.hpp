#ifndef K3MODULI_TEST_SUPPORT_HPP
#define K3MODULI_TEST_SUPPORT_HPP

// Generators and independent oracles shared by the unit suites.

#include <cstdint>
#include <random>
#include <vector>

#include "k3moduli/k3moduli.hpp"

namespace testing_support {

using k3moduli::Int;

/// Negative discriminants -3 >= D >= -limit.
inline std::vector<Int> discriminants(Int limit)
{
    std::vector<Int> out;
    for (Int n = 3; n <= limit; ++n)
        if (k3moduli::arith::is_valid_negative_disc(-n))
            out.push_back(-n);
    return out;
}

inline std::vector<Int> fundamental_discriminants(Int limit)
{
    std::vector<Int> out;
    for (Int d : discriminants(limit))
        if (k3moduli::arith::is_fundamental(d))
            out.push_back(d);
    return out;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    Int uniform(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(gen); }
};

/// Random SL2(Z) matrix with entries in [-bound, bound].
inline k3moduli::Transform random_sl2(Rng& rng, Int bound)
{
    for (;;) {
        Int p = rng.uniform(-bound, bound), r = rng.uniform(-bound, bound);
        if (std::gcd(p, r) != 1)
            continue;
        auto [g, u, v] = k3moduli::arith::xgcd(p, r); // u p + v r = 1
        if (g != 1)
            continue;
        // (p q; r s) with p s - q r = 1: s = u, q = -v, shifted by t (p, r)
        for (Int t = -bound; t <= bound; ++t) {
            Int q = -v + t * p, s = u + t * r;
            if (std::abs(q) <= bound && std::abs(s) <= bound && rng.uniform(0, 3) == 0)
                return {p, q, r, s};
        }
    }
}

/// Kronecker symbol (d / n) for n > 0 and d a discriminant.
inline int kronecker(Int d, Int n)
{
    int result = 1;
    for (Int p = 2; p * p <= n || n > 1; ++p) {
        if (p * p > n)
            p = n;
        while (n % p == 0) {
            n /= p;
            int s;
            if (p == 2) {
                Int r = ((d % 8) + 8) % 8;
                s = (d % 2 == 0) ? 0 : ((r == 1 || r == 7) ? 1 : -1);
            } else {
                Int a = ((d % p) + p) % p;
                if (a == 0) {
                    s = 0;
                } else {
                    Int e = (p - 1) / 2, acc = 1, base = a;
                    while (e) {
                        if (e & 1)
                            acc = acc * base % p;
                        base = base * base % p;
                        e >>= 1;
                    }
                    s = (acc == 1) ? 1 : -1;
                }
            }
            result *= s;
        }
    }
    return result;
}

/// Class number by the analytic class number formula, extended to
/// non-maximal orders by the conductor formula. Independent of the forms code.
inline Int class_number_formula(Int disc)
{
    Int f = 1, d = disc;
    for (Int p = 2; p * p <= -d; ++p)
        while (d % (p * p) == 0 && k3moduli::arith::is_valid_negative_disc(d / (p * p))) {
            d /= p * p;
            f *= p;
        }
    const Int w = (d == -3) ? 6 : (d == -4) ? 4 : 2;
    Int s = 0;
    for (Int n = 1; n < -d; ++n)
        s += kronecker(d, n) * n;
    Int hK = -w * s / (2 * -d);
    // h(f^2 d) = h(d) f / [O_K^* : O^*] prod_{p | f} (1 - (d/p)/p)
    Int num = hK * f, den = (f == 1) ? 1 : w / 2;
    Int rest = f;
    for (Int p = 2; p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        num = num / p * (p - kronecker(d, p));
    }
    return num / den;
}

} // namespace testing_support

#endif
