#pragma once

// Certified real enclosures on top of MPFR directed rounding. Every Interval
// produced here contains the exact real value it stands for; lower endpoints
// are rounded toward -inf and upper endpoints toward +inf.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "eht/numeric.hpp"

namespace eht {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Owning wrapper around an mpfr_t.
class Real {
public:
    explicit Real(mpfr_prec_t prec = kDefaultPrecision) { mpfr_init2(value_, prec); mpfr_set_zero(value_, 1); }
    Real(const Real& other) {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    Real(Real&& other) noexcept {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
        mpfr_swap(value_, other.value_);
    }
    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& other) noexcept {
        mpfr_swap(value_, other.value_);
        return *this;
    }
    ~Real() { mpfr_clear(value_); }

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Exact dyadic value as a rational (finite values only).
    Rational to_rational() const {
        if (!mpfr_number_p(value_)) throw std::domain_error("non-finite MPFR value");
        Rational out;
        mpfr_get_q(out.get_mpq_t(), value_);
        return out;
    }

private:
    mpfr_t value_;
};

/// Closed interval [lo, hi] of reals with dyadic endpoints.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}

    static Interval from_rational(const Rational& r, mpfr_prec_t prec = kDefaultPrecision) {
        Interval out(prec);
        mpfr_set_q(out.lo_.get(), r.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(out.hi_.get(), r.get_mpq_t(), MPFR_RNDU);
        return out;
    }

    static Interval from_integer(const BigInt& v, mpfr_prec_t prec = kDefaultPrecision) {
        Interval out(prec);
        mpfr_set_z(out.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(out.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return out;
    }

    static Interval from_bounds(const Real& lo, const Real& hi) {
        Interval out(std::max(lo.precision(), hi.precision()));
        mpfr_set(out.lo_.get(), lo.get(), MPFR_RNDD);
        mpfr_set(out.hi_.get(), hi.get(), MPFR_RNDU);
        return out;
    }

    /// Euler-Mascheroni constant.
    static Interval euler_gamma(mpfr_prec_t prec = kDefaultPrecision) {
        Interval out(prec);
        mpfr_const_euler(out.lo_.get(), MPFR_RNDD);
        mpfr_const_euler(out.hi_.get(), MPFR_RNDU);
        return out;
    }

    const Real& lo() const noexcept { return lo_; }
    const Real& hi() const noexcept { return hi_; }
    Real& lo() noexcept { return lo_; }
    Real& hi() noexcept { return hi_; }
    mpfr_prec_t precision() const noexcept { return lo_.precision(); }

    Rational lower_rational() const { return lo_.to_rational(); }
    Rational upper_rational() const { return hi_.to_rational(); }
    double midpoint() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

    bool contains(const Rational& r) const {
        return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), r.get_mpq_t()) >= 0;
    }
    /// Every element is strictly greater than every element of other.
    bool certainly_greater(const Interval& other) const { return mpfr_greater_p(lo_.get(), other.hi_.get()) != 0; }
    bool certainly_greater(const Rational& r) const { return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) > 0; }
    bool certainly_at_most(const Rational& r) const { return mpfr_cmp_q(hi_.get(), r.get_mpq_t()) <= 0; }

    Interval& operator+=(const Interval& o) {
        mpfr_add(lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_add(hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return *this;
    }
    Interval& operator-=(const Interval& o) {
        // [a,b] - [c,d] = [a-d, b-c]; temporaries because o may alias *this.
        Real new_lo(precision()), new_hi(precision());
        mpfr_sub(new_lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
        mpfr_sub(new_hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
        lo_ = std::move(new_lo);
        hi_ = std::move(new_hi);
        return *this;
    }
    Interval& operator+=(const Rational& r) {
        mpfr_add_q(lo_.get(), lo_.get(), r.get_mpq_t(), MPFR_RNDD);
        mpfr_add_q(hi_.get(), hi_.get(), r.get_mpq_t(), MPFR_RNDU);
        return *this;
    }

    /// Adds sign/d for sign in {-1, +1} and d > 0; the hot loop of certified traces.
    Interval& add_signed_reciprocal(int sign, unsigned long d) {
        // d is exact at >= 64 bits, so only the division rounds.
        scratch_reciprocal(d, sign > 0 ? MPFR_RNDD : MPFR_RNDU);
        if (sign > 0)
            mpfr_add(lo_.get(), lo_.get(), scratch().get(), MPFR_RNDD);
        else
            mpfr_sub(lo_.get(), lo_.get(), scratch().get(), MPFR_RNDD);
        scratch_reciprocal(d, sign > 0 ? MPFR_RNDU : MPFR_RNDD);
        if (sign > 0)
            mpfr_add(hi_.get(), hi_.get(), scratch().get(), MPFR_RNDU);
        else
            mpfr_sub(hi_.get(), hi_.get(), scratch().get(), MPFR_RNDU);
        return *this;
    }

    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }

    friend Interval operator*(const Interval& a, const Interval& b) {
        const mpfr_prec_t prec = std::max(a.precision(), b.precision());
        Interval out(prec);
        Real t(prec);
        const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
        const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
        bool first = true;
        for (auto x : xs) {
            for (auto y : ys) {
                mpfr_mul(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), out.lo_.get())) mpfr_set(out.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), out.hi_.get())) mpfr_set(out.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return out;
    }

    /// Division by an interval that lies strictly on one side of zero.
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0)
            throw std::domain_error("interval division by an interval containing zero");
        const mpfr_prec_t prec = std::max(a.precision(), b.precision());
        Interval recip(prec);
        mpfr_ui_div(recip.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
        mpfr_ui_div(recip.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
        return a * recip;
    }

    Interval negated() const {
        Interval out(precision());
        mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
        return out;
    }

    /// Natural logarithm; requires lo > 0.
    Interval log() const {
        if (mpfr_sgn(lo_.get()) <= 0) throw std::domain_error("log of non-positive interval");
        Interval out(precision());
        mpfr_log(out.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_log(out.hi_.get(), hi_.get(), MPFR_RNDU);
        return out;
    }

    Interval exp() const {
        Interval out(precision());
        mpfr_exp(out.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_exp(out.hi_.get(), hi_.get(), MPFR_RNDU);
        return out;
    }

    std::string to_string(int digits = 20) const {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "[%.*RDe, %.*RUe]", digits, lo_.get(), digits, hi_.get());
        return buf;
    }

private:
    Real& scratch() const {
        const mpfr_prec_t want = std::max<mpfr_prec_t>(precision(), 64);
        thread_local Real t(kDefaultPrecision);
        if (t.precision() != want) t = Real(want);
        return t;
    }
    void scratch_reciprocal(unsigned long d, mpfr_rnd_t rnd) const {
        Real& t = scratch();
        mpfr_set_ui(t.get(), d, MPFR_RNDN);
        mpfr_ui_div(t.get(), 1, t.get(), rnd);
    }

    Real lo_;
    Real hi_;
};

/// ln(n) for a positive integer.
inline Interval log_of_integer(const BigInt& n, mpfr_prec_t prec = kDefaultPrecision) {
    return Interval::from_integer(n, prec).log();
}

/// Exact harmonic number H_n = 1 + 1/2 + ... + 1/n (H_0 = 0). Only for modest n.
inline Rational harmonic_exact(std::uint64_t n) {
    Rational sum = 0;
    for (std::uint64_t m = 1; m <= n; ++m) sum += Rational(1, static_cast<unsigned long>(m));
    return sum;
}

/// Certified enclosure of H_n. Small n are summed exactly; larger n use
///   ln n + g + 1/(2n) - 1/(12n^2) < H_n < ln n + g + 1/(2n) - 1/(12n^2) + 1/(120 n^4).
inline Interval harmonic(const BigInt& n, mpfr_prec_t prec = kDefaultPrecision) {
    if (n < 0) throw std::domain_error("harmonic number of negative index");
    if (n <= 64) return Interval::from_rational(harmonic_exact(n.get_ui()), prec);

    Interval base = log_of_integer(n, prec) + Interval::euler_gamma(prec);
    const Rational inv_n(BigInt(1), n);
    const Rational correction = inv_n / 2 - inv_n * inv_n / 12;
    base += correction;
    Interval out = base;
    const Rational inv_n2 = inv_n * inv_n;
    mpfr_add_q(out.hi().get(), out.hi().get(), Rational(inv_n2 * inv_n2 / 120).get_mpq_t(), MPFR_RNDU);
    return out;
}

/// Enclosure of H_n that is tight for every n: exact up to 64, summed term by term
/// with directed rounding up to direct_limit, asymptotic beyond (width 1/(120 n^4)).
inline Interval harmonic_tight(const BigInt& n, mpfr_prec_t prec = kDefaultPrecision,
                               unsigned long direct_limit = 10000) {
    if (n <= 64 || n > direct_limit) return harmonic(n, prec);
    Interval sum = Interval::from_rational(harmonic_exact(64), prec);
    const unsigned long top = n.get_ui();
    for (unsigned long m = 65; m <= top; ++m) sum.add_signed_reciprocal(1, m);
    return sum;
}

/// Certified enclosure of sum_{m=a+1}^{b} 1/m = H_b - H_a for 0 <= a <= b.
inline Interval harmonic_range(const BigInt& a, const BigInt& b, mpfr_prec_t prec = kDefaultPrecision) {
    if (a < 0 || b < a) throw std::domain_error("invalid harmonic range");
    if (b - a <= 256 && b < BigInt(1) << 62) {
        Rational sum = 0;
        for (BigInt m = a + 1; m <= b; ++m) sum += Rational(BigInt(1), m);
        return Interval::from_rational(sum, prec);
    }
    return harmonic(b, prec) - harmonic(a, prec);
}

}  // namespace eht
