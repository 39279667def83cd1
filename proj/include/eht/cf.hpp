#pragma once

// Continued fractions alpha = [a_1 a_2 a_3 ...] = 1/(a_1 + 1/(a_2 + ...)) in (0,1),
// their convergents p_k/q_k, cylinder sets and diagnostics of approximation type.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eht/numeric.hpp"

namespace eht {

/// Closed rational interval [lo, hi] with lo < hi.
struct RationalEnclosure {
    Rational lo;
    Rational hi;

    RationalEnclosure() = default;
    RationalEnclosure(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
        if (!(lo < hi)) throw std::invalid_argument("enclosure needs lo < hi");
    }

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const RationalEnclosure& inner) const { return lo <= inner.lo && inner.hi <= hi; }
};

/// An irrational number in (0,1) known through a prefix of its continued fraction.
///
/// Digits beyond the stored prefix may be produced on demand by a DigitRule.
/// The digit/convergent cache only ever grows; reading is safe from many
/// threads, but growing it (any call that needs an unknown digit) must be
/// serialized by the caller.
class CFNumber {
public:
    /// Produces digit a_index (1-based) given the number with digits 1..index-1 known.
    using DigitRule = std::function<BigInt(std::size_t index, const CFNumber& prefix)>;

    CFNumber() { reset_cache(); }

    explicit CFNumber(std::vector<BigInt> digits, DigitRule rule = {}, std::string name = {})
        : rule_(std::move(rule)), name_(std::move(name)) {
        reset_cache();
        for (auto& d : digits) append(std::move(d));
    }

    CFNumber(std::initializer_list<long> digits) {
        reset_cache();
        for (long d : digits) append(BigInt(d));
    }

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Number of digits currently materialized.
    std::size_t known_digits() const noexcept { return digits_.size(); }
    bool extensible() const noexcept { return static_cast<bool>(rule_); }

    /// Makes at least `depth` digits available if possible; returns whether it succeeded.
    bool try_extend(std::size_t depth) const {
        while (digits_.size() < depth) {
            if (!rule_) return false;
            const std::size_t index = digits_.size() + 1;
            push(rule_(index, *this));
        }
        return true;
    }

    /// Like try_extend but throws DigitExhaustion.
    void require(std::size_t depth) const {
        if (!try_extend(depth))
            throw DigitExhaustion("continued fraction has " + std::to_string(digits_.size()) +
                                      " digits, " + std::to_string(depth) + " required",
                                  depth);
    }

    /// Appends a_{n+1}. Must be >= 1.
    void append(BigInt digit) { push(std::move(digit)); }

    /// a_k, 1-based.
    const BigInt& digit(std::size_t k) const {
        if (k == 0) throw std::out_of_range("digits are 1-based");
        require(k);
        return digits_[k - 1];
    }
    /// p_k for k >= 0 (p_0 = 0).
    const BigInt& p(std::size_t k) const {
        require(k);
        return p_[k];
    }
    /// q_k for k >= 0 (q_0 = 1).
    const BigInt& q(std::size_t k) const {
        require(k);
        return q_[k];
    }
    Rational convergent(std::size_t k) const { return Rational(p(k), q(k)); }

    /// First n digits.
    std::vector<BigInt> prefix(std::size_t n) const {
        require(n);
        return {digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(n)};
    }
    const std::vector<BigInt>& known_prefix() const noexcept { return digits_; }

    /// Copy holding only the first n digits and no rule.
    CFNumber truncated(std::size_t n) const { return CFNumber(prefix(n), {}, name_); }

private:
    void reset_cache() {
        digits_.clear();
        p_.assign(1, BigInt(0));
        q_.assign(1, BigInt(1));
    }

    void push(BigInt digit) const {
        if (digit < 1) throw std::invalid_argument("continued-fraction digits must be >= 1, got " + digit.get_str());
        const std::size_t n = digits_.size() + 1;
        // q_n = a_n q_{n-1} + q_{n-2}, with q_{-1} = 0, q_0 = 1; same for p with p_{-1} = 1, p_0 = 0.
        BigInt pn = digit * p_[n - 1] + (n >= 2 ? p_[n - 2] : BigInt(1));
        BigInt qn = digit * q_[n - 1] + (n >= 2 ? q_[n - 2] : BigInt(0));
        digits_.push_back(std::move(digit));
        p_.push_back(std::move(pn));
        q_.push_back(std::move(qn));
    }

    // Append-only cache: logically part of the value, grown lazily by the rule.
    mutable std::vector<BigInt> digits_;
    mutable std::vector<BigInt> p_;
    mutable std::vector<BigInt> q_;
    DigitRule rule_;
    std::string name_;
};

/// S[a_1 ... a_n]: the irrationals whose expansion starts with the prefix.
struct CylinderSet {
    std::vector<BigInt> prefix;

    explicit CylinderSet(std::vector<BigInt> digits) : prefix(std::move(digits)) {
        if (prefix.empty()) throw std::invalid_argument("cylinder prefix must be nonempty");
        for (const auto& d : prefix)
            if (d < 1) throw std::invalid_argument("cylinder digits must be >= 1");
    }

    bool contains(const CFNumber& cf) const {
        if (!cf.try_extend(prefix.size())) return false;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (cf.digit(i + 1) != prefix[i]) return false;
        return true;
    }

    /// Smallest closed interval containing the cylinder: between p_n/q_n and
    /// (p_n + p_{n-1})/(q_n + q_{n-1}).
    RationalEnclosure hull() const {
        CFNumber cf(prefix);
        const std::size_t n = prefix.size();
        Rational a = cf.convergent(n);
        Rational b(cf.p(n) + cf.p(n - 1), cf.q(n) + cf.q(n - 1));
        b.canonicalize();
        return a < b ? RationalEnclosure(a, b) : RationalEnclosure(b, a);
    }
};

/// (p_k, q_k) for k = 1..n.
inline std::vector<std::pair<BigInt, BigInt>> convergents(const CFNumber& cf, std::size_t n) {
    cf.require(n);
    std::vector<std::pair<BigInt, BigInt>> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) out.emplace_back(cf.p(k), cf.q(k));
    return out;
}

/// Interval between consecutive convergents p_k/q_k and p_{k+1}/q_{k+1}.
///
/// Odd convergents overestimate alpha and even ones underestimate it, so every
/// irrational sharing the first k+1 digits lies strictly inside. The width is
/// exactly 1/(q_k q_{k+1}) and the enclosures are nested in k.
inline RationalEnclosure enclose(const CFNumber& cf, std::size_t k) {
    cf.require(k + 1);
    Rational a = cf.convergent(k);
    Rational b = cf.convergent(k + 1);
    return a < b ? RationalEnclosure(a, b) : RationalEnclosure(b, a);
}

/// Finite-depth estimate of the approximation type: the largest
/// log q_{k+1} / log q_k over the upper half of the window, k in [ceil(depth/2), depth-1].
/// A prefix never determines the type; the value only tracks how fast q_k grows near `depth`.
inline double estimate_type(const CFNumber& cf, std::size_t depth) {
    if (depth < 3) throw std::invalid_argument("estimate_type needs depth >= 3");
    cf.require(depth);
    double best = 1.0;
    for (std::size_t k = (depth + 1) / 2; k + 1 <= depth; ++k) {
        if (cf.q(k) < 2) continue;
        best = std::max(best, log_of(cf.q(k + 1)) / log_of(cf.q(k)));
    }
    return best;
}

/// Whether q_1 ... q_n are all odd.
inline bool all_q_odd(const CFNumber& cf, std::size_t n) {
    cf.require(n);
    for (std::size_t k = 1; k <= n; ++k)
        if (is_even(cf.q(k))) return false;
    return true;
}

/// First index k >= from with q_k odd.
inline std::size_t next_odd_q_index(const CFNumber& cf, std::size_t from) {
    for (std::size_t k = from;; ++k) {
        cf.require(k);
        if (is_odd(cf.q(k))) return k;
    }
}

namespace presets {

/// (sqrt 5 - 1)/2 = [1 1 1 ...].
inline CFNumber golden(std::size_t depth = 64) {
    CFNumber cf({}, [](std::size_t, const CFNumber&) { return BigInt(1); }, "golden");
    cf.require(depth);
    return cf;
}

/// sqrt 2 - 1 = [2 2 2 ...], the fractional part of sqrt 2 (and of 1 + sqrt 2).
inline CFNumber sqrt2(std::size_t depth = 64) {
    CFNumber cf({}, [](std::size_t, const CFNumber&) { return BigInt(2); }, "sqrt2");
    cf.require(depth);
    return cf;
}

}  // namespace presets

}  // namespace eht
