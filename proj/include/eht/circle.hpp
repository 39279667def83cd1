#pragma once

// Exact points and finite unions of arcs on S^1 = [0,1), the observable
// f = 2*1_U - 1, and certified evaluation of f along rotation orbits.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eht/cf.hpp"
#include "eht/numeric.hpp"

namespace eht {

/// A point of [0,1).
class UnitPoint {
public:
    UnitPoint() = default;
    explicit UnitPoint(Rational v) : value_(std::move(v)) {
        value_.canonicalize();
        if (value_ < 0 || value_ >= 1) throw std::invalid_argument("unit point must lie in [0,1): " + to_string(value_));
    }
    /// Reduces mod 1.
    static UnitPoint wrap(const Rational& v) { return UnitPoint(frac(v)); }

    const Rational& value() const noexcept { return value_; }
    friend bool operator==(const UnitPoint& a, const UnitPoint& b) { return a.value_ == b.value_; }

private:
    Rational value_{0};
};

/// <<p>>: distance from p to the nearest integer, in [0, 1/2].
inline Rational distance_to_zero(const Rational& p) {
    Rational f = frac(p);
    Rational g = Rational(1) - f;
    return f < g ? f : g;
}

enum class Sign : int { Minus = -1, Undetermined = 0, Plus = 1 };

/// Half-open arc [left, right) on the circle. right < left means the arc wraps through 0.
struct Arc {
    Rational left;
    Rational right;
};

/// U = a disjoint union of B half-open arcs with m(U) = 1/2.
class IntervalUnion {
public:
    explicit IntervalUnion(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
        if (arcs_.empty()) throw std::invalid_argument("interval union needs at least one interval");
        for (auto& a : arcs_) {
            a.left.canonicalize();
            a.right.canonicalize();
            if (a.left < 0 || a.left >= 1) throw std::invalid_argument("left endpoint outside [0,1): " + to_string(a.left));
            if (a.right < 0 || a.right > 1) throw std::invalid_argument("right endpoint outside [0,1]: " + to_string(a.right));
            if (a.right == 0) a.right = 1;
            if (a.left == a.right) throw std::invalid_argument("degenerate interval at " + to_string(a.left));
            if (a.left < a.right) {
                pieces_.push_back({a.left, a.right});
            } else {
                pieces_.push_back({a.left, Rational(1)});
                if (a.right > 0) pieces_.push_back({Rational(0), a.right});
            }
        }
        std::sort(pieces_.begin(), pieces_.end(), [](const Arc& x, const Arc& y) { return x.left < y.left; });
        for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
            if (pieces_[i].right > pieces_[i + 1].left) throw std::invalid_argument("intervals overlap");
        Rational total = 0;
        for (const auto& p : pieces_) total += p.right - p.left;
        if (total != Rational(1, 2))
            throw std::invalid_argument("interval union must have measure exactly 1/2, got " + to_string(total));
        for (const auto& p : pieces_) {
            endpoints_.push_back(p.left);
            endpoints_.push_back(p.right == 1 ? Rational(0) : p.right);
        }
        std::sort(endpoints_.begin(), endpoints_.end());
        endpoints_.erase(std::unique(endpoints_.begin(), endpoints_.end()), endpoints_.end());
    }

    /// [0, 1/2).
    static IntervalUnion half_circle() { return IntervalUnion({{Rational(0), Rational(1, 2)}}); }

    /// B, the number of intervals as given (a wrapping interval counts once).
    std::size_t count() const noexcept { return arcs_.size(); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    /// Non-wrapping pieces sorted by left endpoint.
    const std::vector<Arc>& pieces() const noexcept { return pieces_; }
    /// Distinct endpoints reduced to [0,1), sorted.
    const std::vector<Rational>& endpoints() const noexcept { return endpoints_; }

    /// Membership of a point of [0,1).
    bool contains(const Rational& point) const {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), point,
                                   [](const Rational& v, const Arc& a) { return v < a.left; });
        if (it == pieces_.begin()) return false;
        --it;
        return point < it->right;
    }

    /// f(point) = 2*1_U(point) - 1 for any rational, reduced mod 1.
    int f(const Rational& point) const { return contains(frac(point)) ? 1 : -1; }

    /// Least common denominator of all endpoints.
    BigInt common_denominator() const {
        BigInt d = 1;
        for (const auto& e : endpoints_) d = lcm(d, e.get_den());
        return d;
    }

private:
    std::vector<Arc> arcs_;
    std::vector<Arc> pieces_;
    std::vector<Rational> endpoints_;
};

/// Closed arc [lo, hi] (mod 1) of width < 1 known to contain an orbit point.
struct PointEnclosure {
    Rational lo;
    Rational hi;

    PointEnclosure() = default;
    PointEnclosure(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
        if (hi < lo || hi - lo >= 1) throw std::invalid_argument("point enclosure needs 0 <= hi - lo < 1");
        const BigInt shift = floor_of(lo);
        lo -= shift;
        hi -= shift;
    }
    Rational width() const { return hi - lo; }
};

/// +1 / -1 when the whole enclosure is inside / outside U, Undetermined when it
/// straddles an endpoint.
inline Sign eval_sign(const IntervalUnion& U, const PointEnclosure& e) {
    for (const auto& end : U.endpoints()) {
        for (int t = 0; t <= 1; ++t) {
            const Rational shifted = end + t;
            if (e.lo < shifted && shifted <= e.hi) return Sign::Undetermined;
        }
    }
    return U.contains(e.lo) ? Sign::Plus : Sign::Minus;
}

/// The rotation number: an irrational known by its continued fraction, or an
/// exact rational for test mode where every computation is exact.
class Rotation {
public:
    static Rotation irrational(CFNumber cf) {
        Rotation r;
        r.value_ = std::make_shared<const CFNumber>(std::move(cf));
        return r;
    }
    static Rotation rational(Rational a) {
        a.canonicalize();
        if (a <= 0 || a >= 1) throw std::invalid_argument("rational rotation must lie in (0,1)");
        Rotation r;
        r.value_ = std::move(a);
        return r;
    }

    bool is_rational() const noexcept { return std::holds_alternative<Rational>(value_); }
    const CFNumber& cf() const {
        if (is_rational()) throw std::logic_error("rotation is rational");
        return *std::get<std::shared_ptr<const CFNumber>>(value_);
    }
    const Rational& exact() const { return std::get<Rational>(value_); }

    std::string label() const {
        if (is_rational()) return to_string(exact());
        const auto& c = cf();
        return c.name().empty() ? "cf" : c.name();
    }

private:
    Rotation() = default;
    std::variant<std::shared_ptr<const CFNumber>, Rational> value_;
};

/// O_alpha[j1, j2] = {T^i x : j1 <= i <= j2}.
struct OrbitSegment {
    Rotation alpha;
    UnitPoint x;
    std::int64_t j1;
    std::int64_t j2;

    OrbitSegment(Rotation a, UnitPoint start, std::int64_t first, std::int64_t last)
        : alpha(std::move(a)), x(std::move(start)), j1(first), j2(last) {
        if (j2 < j1) throw std::invalid_argument("orbit segment needs j1 <= j2");
    }
    std::int64_t length() const noexcept { return j2 - j1 + 1; }
};

/// Enclosure of x + n*alpha (mod 1) using the depth-k convergent enclosure of alpha.
inline PointEnclosure orbit_point(const Rotation& alpha, const UnitPoint& x, std::int64_t n, std::size_t k) {
    if (n == 0) return {x.value(), x.value()};
    if (alpha.is_rational()) {
        Rational p = frac(x.value() + alpha.exact() * n);
        return {p, p};
    }
    const RationalEnclosure a = enclose(alpha.cf(), k);
    Rational lo = x.value() + a.lo * n;
    Rational hi = x.value() + a.hi * n;
    if (n < 0) std::swap(lo, hi);
    if (hi - lo >= 1) throw std::invalid_argument("depth " + std::to_string(k) + " too shallow for n = " + std::to_string(n));
    return {lo, hi};
}

/// Certified f(T^n x) in {+1, -1}.
///
/// For irrational alpha and n != 0 the point never equals an endpoint, so
/// refining the enclosure (doubling the depth) always terminates given enough digits.
inline int sign_at(const Rotation& alpha, const UnitPoint& x, std::int64_t n, const IntervalUnion& U) {
    if (n == 0 || alpha.is_rational()) return U.contains(orbit_point(alpha, x, n, 0).lo) ? 1 : -1;
    const CFNumber& cf = alpha.cf();
    const BigInt absn = BigInt(static_cast<long>(n < 0 ? -n : n));
    std::size_t k = 1;
    // Start where the enclosure width |n|/(q_k q_{k+1}) drops below 1/2.
    while (true) {
        if (!cf.try_extend(k + 1)) throw DigitExhaustion("digits exhausted before enclosure fits", k + 1);
        if (2 * absn < cf.q(k) * cf.q(k + 1)) break;
        ++k;
    }
    while (true) {
        const Sign s = eval_sign(U, orbit_point(alpha, x, n, k));
        if (s != Sign::Undetermined) return static_cast<int>(s);
        const std::size_t next = 2 * k;
        if (!cf.try_extend(next + 1)) {
            // Try every remaining known depth before giving up.
            const std::size_t known = cf.known_digits();
            for (std::size_t kk = k + 1; kk + 1 <= known; ++kk) {
                const Sign s2 = eval_sign(U, orbit_point(alpha, x, n, kk));
                if (s2 != Sign::Undetermined) return static_cast<int>(s2);
            }
            throw DigitExhaustion("cannot separate T^" + std::to_string(n) + " x from an endpoint of U with " +
                                      std::to_string(known) + " digits",
                                  next + 1);
        }
        k = next;
    }
}

/// Signs c_n = f(T^n x) for n in [first, last], stored contiguously.
struct SignSequence {
    std::int64_t first = 1;
    std::vector<std::int8_t> values;

    std::int64_t last() const noexcept { return first + static_cast<std::int64_t>(values.size()) - 1; }
    std::size_t size() const noexcept { return values.size(); }
    int at(std::int64_t n) const { return values.at(static_cast<std::size_t>(n - first)); }
    long sum() const {
        long s = 0;
        for (auto v : values) s += v;
        return s;
    }
};

namespace detail {

template <class Int>
Int to_int(const BigInt& v);

template <>
inline BigInt to_int<BigInt>(const BigInt& v) {
    return v;
}

template <>
inline unsigned __int128 to_int<unsigned __int128>(const BigInt& v) {
    BigInt hi = v >> 64;
    BigInt lo = v - (hi << 64);
    return (static_cast<unsigned __int128>(to_u64(hi)) << 64) | to_u64(lo);
}

/// Scans residues R_n = (R_first + (n - first) * step) mod M and classifies
/// each against U's endpoints scaled by M. Residues that coincide with an
/// endpoint are recorded in `ambiguous` unless `exact` (half-open convention).
template <class Int>
void scan_residues(const Int& modulus, const Int& step, Int residue, const std::vector<Int>& starts,
                   const std::vector<Int>& ends, const std::vector<Int>& endpoints, bool exact,
                   std::int64_t first, std::int64_t last, std::vector<std::int8_t>& out,
                   std::vector<std::int64_t>& ambiguous) {
    out.resize(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t n = first; n <= last; ++n) {
        auto it = std::upper_bound(starts.begin(), starts.end(), residue);
        bool inside = false;
        if (it != starts.begin()) {
            const auto idx = static_cast<std::size_t>(it - starts.begin()) - 1;
            inside = residue < ends[idx];
        }
        out[static_cast<std::size_t>(n - first)] = inside ? 1 : -1;
        if (!exact && std::binary_search(endpoints.begin(), endpoints.end(), residue)) ambiguous.push_back(n);
        residue += step;
        if (!(residue < modulus)) residue -= modulus;
    }
}

}  // namespace detail

/// Certified signs f(T^n x) for every n in [first, last].
///
/// Irrational alpha is replaced by p_K/q_K with K the least index such that
/// q_{K+1} > max|n| * L (L = common denominator of x and U's endpoints); on the
/// grid of mesh 1/(L q_K) the true point lies within one cell of the
/// approximate one, so only residues landing exactly on an endpoint need the
/// per-point refinement of sign_at.
inline SignSequence orbit_signs(const Rotation& alpha, const UnitPoint& x, const IntervalUnion& U,
                                std::int64_t first, std::int64_t last) {
    if (last < first) throw std::invalid_argument("orbit_signs needs first <= last");
    const BigInt L = lcm(x.value().get_den(), U.common_denominator());
    const std::int64_t max_abs = std::max(first < 0 ? -first : first, last < 0 ? -last : last);

    BigInt denom;
    BigInt numer;
    const bool exact = alpha.is_rational();
    if (exact) {
        denom = alpha.exact().get_den();
        numer = alpha.exact().get_num();
    } else {
        const CFNumber& cf = alpha.cf();
        const BigInt bound = L * BigInt(static_cast<long>(max_abs));
        std::size_t K = 1;
        while (true) {
            if (!cf.try_extend(K + 1))
                throw DigitExhaustion("not enough digits to certify orbit up to n = " + std::to_string(max_abs), K + 1);
            if (cf.q(K + 1) > bound) break;
            ++K;
        }
        denom = cf.q(K);
        numer = cf.p(K);
    }

    const BigInt M = L * denom;
    const BigInt step = numer * L;  // alpha * M, exactly or approximately
    BigInt start = x.value().get_num() * (M / x.value().get_den()) + step * BigInt(static_cast<long>(first));
    mpz_fdiv_r(start.get_mpz_t(), start.get_mpz_t(), M.get_mpz_t());

    std::vector<BigInt> starts, ends, endpoints;
    for (const auto& p : U.pieces()) {
        starts.push_back(BigInt(p.left * M));
        ends.push_back(BigInt(p.right * M));
    }
    for (const auto& e : U.endpoints()) endpoints.push_back(BigInt(e * M));

    SignSequence seq;
    seq.first = first;
    std::vector<std::int64_t> ambiguous;
    if (mpz_sizeinbase(M.get_mpz_t(), 2) <= 125) {
        using U128 = unsigned __int128;
        auto conv = [](const std::vector<BigInt>& v) {
            std::vector<U128> out;
            out.reserve(v.size());
            for (const auto& b : v) out.push_back(detail::to_int<U128>(b));
            return out;
        };
        detail::scan_residues<U128>(detail::to_int<U128>(M), detail::to_int<U128>(step % M), detail::to_int<U128>(start),
                                    conv(starts), conv(ends), conv(endpoints), exact, first, last, seq.values, ambiguous);
    } else {
        BigInt step_mod = step % M;
        detail::scan_residues<BigInt>(M, step_mod, start, starts, ends, endpoints, exact, first, last, seq.values,
                                      ambiguous);
    }
    for (std::int64_t n : ambiguous)
        seq.values[static_cast<std::size_t>(n - first)] = static_cast<std::int8_t>(sign_at(alpha, x, n, U));
    return seq;
}

/// s(O[j1, j2]) = sum of f(T^i x) over the segment.
inline long segment_sum(const OrbitSegment& seg, const IntervalUnion& U) {
    return orbit_signs(seg.alpha, seg.x, U, seg.j1, seg.j2).sum();
}

}  // namespace eht
