#ifndef K3MODULI_ARITH_HPP
#define K3MODULI_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace k3moduli {

using Int = std::int64_t;
using Wide = __int128;

namespace arith {

inline Int narrow(Wide v)
{
    if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
        throw std::overflow_error("k3moduli: integer overflow in 64-bit arithmetic");
    return static_cast<Int>(v);
}

inline Int abs(Int x) { return x < 0 ? -x : x; }

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }
inline Int gcd(Int a, Int b, Int c) { return std::gcd(std::gcd(a, b), c); }

/// Floor division for any sign of the operands.
inline Int floor_div(Int a, Int b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Least non-negative residue.
inline Int mod(Int a, Int m)
{
    Int r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline Int isqrt(Int n)
{
    if (n < 0)
        throw std::domain_error("isqrt of negative");
    Int r = static_cast<Int>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<Wide>(r) * r > n)
        --r;
    while (static_cast<Wide>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

/// Returns (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> xgcd(Int a, Int b)
{
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline bool is_squarefree(Int n)
{
    n = abs(n);
    for (Int p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0)
            return false;
        if (n % p == 0)
            n /= p;
    }
    return true;
}

/// D < 0 with D = 0 or 1 mod 4.
inline bool is_valid_negative_disc(Int d) { return d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1); }

inline bool is_fundamental(Int d)
{
    if (!is_valid_negative_disc(d))
        return false;
    if (mod(d, 4) == 1)
        return is_squarefree(d);
    Int m = d / 4;
    Int r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

inline std::vector<Int> divisors(Int n)
{
    std::vector<Int> lo, hi;
    for (Int k = 1; k * k <= n; ++k) {
        if (n % k == 0) {
            lo.push_back(k);
            if (k != n / k)
                hi.push_back(n / k);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline std::vector<Int> prime_factors(Int n)
{
    std::vector<Int> ps;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        ps.push_back(n);
    return ps;
}

} // namespace arith
} // namespace k3moduli

#endif
