#pragma once

// Exact integer/rational vocabulary shared by every module, plus the
// exception types the library throws.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace eht {

using BigInt = mpz_class;

/// mpq_class whose two-argument constructor always reduces to lowest terms.
/// GMP's own (num, den) constructors leave 3/6 or 0/5 as given, and every mpq
/// operation assumes canonical input.
class Rational : public mpq_class {
public:
    Rational() = default;
    Rational(const mpq_class& v) : mpq_class(v) {}
    Rational(mpq_class&& v) noexcept : mpq_class(std::move(v)) {}
    template <class T, class U>
    Rational(const __gmp_expr<T, U>& expr) : mpq_class(expr) {}
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Rational(I v) : mpq_class(to_bigint(v)) {}

    template <class N, class D>
    Rational(const N& num, const D& den) : mpq_class(to_bigint(num), to_bigint(den)) {
        if (get_den() == 0) throw std::invalid_argument("zero denominator");
        canonicalize();
    }

    template <class T, class U>
    Rational& operator=(const __gmp_expr<T, U>& expr) {
        mpq_class::operator=(expr);
        return *this;
    }
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Rational& operator=(I v) {
        mpq_class::operator=(to_bigint(v));
        return *this;
    }

private:
    template <class V>
    static BigInt to_bigint(const V& v) {
        if constexpr (std::is_integral_v<V>) {
            static_assert(sizeof(V) <= sizeof(long), "integer wider than long");
            if constexpr (std::is_unsigned_v<V>)
                return BigInt(static_cast<unsigned long>(v));
            else
                return BigInt(static_cast<long>(v));
        } else {
            return BigInt(v);
        }
    }
};

/// Raised when an operation needs more continued-fraction digits than are known.
class DigitExhaustion : public std::runtime_error {
public:
    DigitExhaustion(const std::string& what, std::size_t required_depth)
        : std::runtime_error(what), required_depth_(required_depth) {}

    /// Number of digits that would have been needed to proceed.
    std::size_t required_depth() const noexcept { return required_depth_; }

private:
    std::size_t required_depth_;
};

/// A checked mathematical invariant failed on concrete data.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Work would exceed what can be enumerated (e.g. an orbit of astronomically many points).
class Infeasible : public std::runtime_error {
public:
    Infeasible(const std::string& what, BigInt size) : std::runtime_error(what), size_(std::move(size)) {}
    const BigInt& size() const noexcept { return size_; }

private:
    BigInt size_;
};

/// Parses "p/q", "p" or a plain decimal "0.75" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw std::invalid_argument("malformed rational: " + s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-") throw std::invalid_argument("malformed rational: " + s);
        BigInt num;
        if (num.set_str(digits, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        return Rational(num, den);
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline BigInt parse_bigint(std::string_view text) {
    BigInt v;
    if (text.empty() || v.set_str(std::string(text), 10) != 0)
        throw std::invalid_argument("malformed integer: " + std::string(text));
    return v;
}

/// "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }
inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline BigInt floor_of(const Rational& r) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

inline BigInt ceil_of(const Rational& r) {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

/// Fractional part {r} in [0, 1).
inline Rational frac(const Rational& r) {
    Rational out = r - Rational(floor_of(r));
    return out;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

/// Natural log of a positive big integer, as a double (diagnostics only).
inline double log_of(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log of non-positive integer");
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_even(const BigInt& v) { return mpz_even_p(v.get_mpz_t()) != 0; }
inline bool is_odd(const BigInt& v) { return !is_even(v); }

inline bool fits_u64(const BigInt& v) { return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& v) {
    if (!fits_u64(v)) throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

}  // namespace eht
