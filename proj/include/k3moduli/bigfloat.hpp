#ifndef K3MODULI_BIGFLOAT_HPP
#define K3MODULI_BIGFLOAT_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace k3moduli {

inline mpfr_prec_t bits_for_digits(int digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}

/// Owning MPFR value with its own precision. Results of binary operations
/// carry the larger precision of the two operands.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128)
    {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(long value, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }
    BigFloat(const mpz_class& value, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN); }
    BigFloat(const std::string& value, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_str(v_, value.c_str(), 10, MPFR_RNDN); }

    BigFloat(const BigFloat& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    static BigFloat pi(mpfr_prec_t prec)
    {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& x, const BigFloat& y) { return binary(x, y, mpfr_add); }
    friend BigFloat operator-(const BigFloat& x, const BigFloat& y) { return binary(x, y, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& x, const BigFloat& y) { return binary(x, y, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& x, const BigFloat& y) { return binary(x, y, mpfr_div); }
    BigFloat operator-() const
    {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& y) { return *this = *this + y; }
    BigFloat& operator-=(const BigFloat& y) { return *this = *this - y; }
    BigFloat& operator*=(const BigFloat& y) { return *this = *this * y; }

    friend bool operator==(const BigFloat& x, const BigFloat& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }
    friend bool operator<(const BigFloat& x, const BigFloat& y) { return mpfr_less_p(x.v_, y.v_) != 0; }

    BigFloat abs() const { return unary(mpfr_abs); }
    BigFloat sqrt() const { return unary(mpfr_sqrt); }
    BigFloat exp() const { return unary(mpfr_exp); }
    BigFloat sin() const { return unary(mpfr_sin); }
    BigFloat cos() const { return unary(mpfr_cos); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// log10 |x|, or -infinity for zero; usable far outside double range.
    double log10_abs() const
    {
        if (is_zero())
            return -HUGE_VAL;
        long e = 0;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
    }

    mpz_class round() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    std::string to_string(int digits = 20) const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

private:
    using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static BigFloat binary(const BigFloat& x, const BigFloat& y, BinaryFn fn)
    {
        BigFloat r(std::max(x.prec(), y.prec()));
        fn(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    BigFloat unary(UnaryFn fn) const
    {
        BigFloat r(prec());
        fn(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// Complex number over two BigFloats of equal precision.
struct BigComplex {
    BigFloat re;
    BigFloat im;

    BigComplex() = default;
    explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    friend BigComplex operator+(const BigComplex& x, const BigComplex& y) { return {x.re + y.re, x.im + y.im}; }
    friend BigComplex operator-(const BigComplex& x, const BigComplex& y) { return {x.re - y.re, x.im - y.im}; }
    friend BigComplex operator*(const BigComplex& x, const BigComplex& y)
    {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& y) { return {s * y.re, s * y.im}; }
    friend BigComplex operator/(const BigComplex& x, const BigComplex& y)
    {
        BigFloat n = y.re * y.re + y.im * y.im;
        return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
    }
    BigComplex& operator+=(const BigComplex& y) { return *this = *this + y; }
    BigComplex& operator*=(const BigComplex& y) { return *this = *this * y; }
    BigComplex operator-() const { return {-re, -im}; }

    BigComplex conj() const { return {re, -im}; }
    BigFloat norm() const { return re * re + im * im; }
    BigFloat abs() const { return norm().sqrt(); }

    double log10_abs() const
    {
        double a = re.log10_abs(), b = im.log10_abs();
        double hi = std::max(a, b), lo = std::min(a, b);
        if (hi == -HUGE_VAL)
            return hi;
        return hi + 0.5 * std::log10(1.0 + std::pow(10.0, 2.0 * (lo - hi)));
    }

    friend bool operator==(const BigComplex& x, const BigComplex& y) { return x.re == y.re && x.im == y.im; }
};

} // namespace k3moduli

#endif
