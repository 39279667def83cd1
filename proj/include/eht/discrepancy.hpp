#pragma once

// Extreme discrepancy of Kronecker samples x_n = n alpha + x (mod 1), and the route from
// discrepancy to convergence of sum f(T^n x)/n by summation by parts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eht/circle.hpp"
#include "eht/eht.hpp"

namespace eht {

/// Points numerators[k]/M of [0,1), in sample order.
struct PointSample {
    BigInt M = 1;
    std::vector<BigInt> numerators;

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(numerators.size()); }
    Rational point(std::int64_t k) const { return Rational(numerators.at(static_cast<std::size_t>(k)), M); }

    static PointSample from_rationals(const std::vector<Rational>& pts) {
        PointSample s;
        for (const auto& p : pts) {
            if (p < 0 || p >= 1) throw std::invalid_argument("sample point outside [0,1): " + to_string(p));
            s.M = lcm(s.M, p.get_den());
        }
        for (const auto& p : pts) s.numerators.push_back(p.get_num() * (s.M / p.get_den()));
        return s;
    }
};

/// D_N with a witness. When exact is false, D_N lies in [lo, hi] and the witness
/// belongs to the rational approximation the enclosure was derived from.
struct DiscrepancyReport {
    std::int64_t N = 0;
    bool exact = true;
    Rational D;
    Rational lo;
    Rational hi;
    Rational witness_lo;
    Rational witness_hi;
    bool witness_closed = true;  // [lo, hi] if true, (lo, hi) otherwise
};

/// sup over 0 <= a < b <= 1 of |#{x_n in [a,b)}/N - (b-a)| from the sorted points:
/// with G_i = i/N - x_(i), D_N = 1/N + max G - min G.
inline DiscrepancyReport discrepancy(const PointSample& sample) {
    const std::int64_t N = sample.size();
    if (N < 1) throw std::invalid_argument("empty sample");
    std::vector<BigInt> xs = sample.numerators;
    std::sort(xs.begin(), xs.end());
    const BigInt bigN(static_cast<long>(N));
    // G_i scaled by N M.
    std::size_t arg_max = 0, arg_min = 0;
    BigInt g_max, g_min;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        BigInt g = BigInt(static_cast<long>(i + 1)) * sample.M - bigN * xs[i];
        if (i == 0 || g > g_max) g_max = g, arg_max = i;
        if (i == 0 || g < g_min) g_min = g, arg_min = i;
    }
    DiscrepancyReport r;
    r.N = N;
    r.D = Rational(sample.M + g_max - g_min, bigN * sample.M);
    r.lo = r.hi = r.D;
    if (arg_min <= arg_max) {
        // [x_(j), x_(k)] holds at least k - j + 1 points.
        r.witness_closed = true;
        r.witness_lo = Rational(xs[arg_min], sample.M);
        r.witness_hi = Rational(xs[arg_max], sample.M);
    } else {
        // (x_(k), x_(j)) holds at most j - k - 1 points.
        r.witness_closed = false;
        r.witness_lo = Rational(xs[arg_max], sample.M);
        r.witness_hi = Rational(xs[arg_min], sample.M);
    }
    return r;
}

/// Deviation |count/N - length| of a witness interval, by direct counting.
inline Rational witness_deviation(const PointSample& sample, const Rational& a, const Rational& b, bool closed) {
    std::int64_t count = 0;
    for (std::int64_t k = 0; k < sample.size(); ++k) {
        const Rational p = sample.point(k);
        if (closed ? (a <= p && p <= b) : (a < p && p < b)) ++count;
    }
    return abs(Rational(count, sample.size()) - (b - a));
}

/// O(N^2 log N) reference: every pair of candidate endpoints in {0, points, 1}, each
/// end open or closed (the limits of half-open intervals).
inline Rational discrepancy_brute_force(const PointSample& sample) {
    const std::int64_t N = sample.size();
    if (N < 1) throw std::invalid_argument("empty sample");
    std::vector<BigInt> xs = sample.numerators;
    std::sort(xs.begin(), xs.end());
    std::vector<BigInt> cand{BigInt(0), sample.M};
    cand.insert(cand.end(), xs.begin(), xs.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    const BigInt bigN(static_cast<long>(N));
    BigInt best = 0;  // scaled by N M
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i; j < cand.size(); ++j) {
            const BigInt len = cand[j] - cand[i];
            for (int lo_closed = 0; lo_closed < 2; ++lo_closed) {
                for (int hi_closed = 0; hi_closed < 2; ++hi_closed) {
                    if (i == j && !(lo_closed && hi_closed)) continue;
                    auto first = lo_closed ? std::lower_bound(xs.begin(), xs.end(), cand[i])
                                           : std::upper_bound(xs.begin(), xs.end(), cand[i]);
                    auto last = hi_closed ? std::upper_bound(xs.begin(), xs.end(), cand[j])
                                          : std::lower_bound(xs.begin(), xs.end(), cand[j]);
                    const long count = last > first ? static_cast<long>(last - first) : 0;
                    BigInt dev = BigInt(count) * sample.M - bigN * len;
                    if (dev < 0) dev = -dev;
                    if (dev > best) best = dev;
                }
            }
        }
    }
    return Rational(best, bigN * sample.M);
}

/// x_n = n a + x (mod 1), n = 1..N, for rational a.
inline PointSample kronecker_sample(const Rational& a, const Rational& x, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    PointSample s;
    s.M = lcm(a.get_den(), x.get_den());
    const BigInt step = a.get_num() * (s.M / a.get_den());
    BigInt cur = x.get_num() * (s.M / x.get_den());
    s.numerators.reserve(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        cur += step;
        mpz_fdiv_r(cur.get_mpz_t(), cur.get_mpz_t(), s.M.get_mpz_t());
        s.numerators.push_back(cur);
    }
    return s;
}

/// D_N of the orbit of x. Rational alpha is exact. Irrational alpha uses p_K/q_K with
/// q_K > N: every point moves by less than delta = N/(q_K q_{K+1}) and none crosses 0,
/// so D_N lies within 2 delta of the approximate sample's discrepancy.
inline DiscrepancyReport kronecker_discrepancy(const Rotation& alpha, const UnitPoint& x, std::int64_t N,
                                               const Rational& tolerance = Rational(BigInt(1), BigInt(1) << 64)) {
    if (alpha.is_rational()) return discrepancy(kronecker_sample(alpha.exact(), x.value(), N));
    const CFNumber& cf = alpha.cf();
    const BigInt bigN(static_cast<long>(N));
    for (std::size_t K = 1;; ++K) {
        cf.require(K + 1);
        if (cf.q(K) <= bigN) continue;
        const Rational delta(bigN, cf.q(K) * cf.q(K + 1));
        if (delta > tolerance) continue;
        const PointSample approx = kronecker_sample(Rational(cf.p(K), cf.q(K)), x.value(), N);
        const BigInt margin = ceil_of(delta * Rational(approx.M));
        bool clear = true;
        for (const auto& v : approx.numerators)
            if (v <= margin || approx.M - v <= margin) {
                clear = false;
                break;
            }
        if (!clear) continue;
        DiscrepancyReport r = discrepancy(approx);
        r.exact = false;
        r.lo = r.D - 2 * delta;
        r.hi = r.D + 2 * delta;
        if (r.lo < 0) r.lo = 0;
        return r;
    }
}

/// |s_N| against 2B N D_N. U or its complement avoids wrapping around 0, so one of them is
/// B half-open intervals whose counts each deviate from N times their length by at most N D_N.
struct GrowthRow {
    std::int64_t N = 0;
    std::int64_t abs_s = 0;
    DiscrepancyReport discrepancy;
    Rational bound;  // 2B N D_lo
    bool ok = false;
};

inline std::vector<GrowthRow> sn_growth(const Rotation& alpha, const UnitPoint& x, const IntervalUnion& U,
                                        const std::vector<std::int64_t>& checkpoints) {
    if (checkpoints.empty()) return {};
    for (std::size_t k = 0; k < checkpoints.size(); ++k)
        if (checkpoints[k] < 1 || (k > 0 && checkpoints[k] <= checkpoints[k - 1]))
            throw std::invalid_argument("checkpoints must be positive and increasing");
    const auto signs = orbit_signs(alpha, x, U, 1, checkpoints.back());
    std::vector<GrowthRow> rows;
    std::int64_t s = 0, n = 0;
    for (auto N : checkpoints) {
        while (n < N) s += signs.at(++n);
        GrowthRow row;
        row.N = N;
        row.abs_s = s < 0 ? -s : s;
        row.discrepancy = kronecker_discrepancy(alpha, x, N);
        row.bound = Rational(2 * static_cast<long>(U.count()) * N) * row.discrepancy.lo;
        row.ok = Rational(row.abs_s) <= row.bound;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// sum_{n<=N} c_n/n = s_N/N + sum_{n<N} s_n/(n(n+1)), with the direct sum for comparison and an
/// empirical tail bound from an envelope |s_n| <= C n^t, t = fitted log-log slope of the running
/// max of |s_n| plus a margin.
struct PartsEvaluation {
    std::int64_t N = 0;
    Interval value;
    std::optional<Rational> exact;
    Interval direct;
    bool identity_holds = false;
    double exponent = 0;  // t
    double constant = 0;  // C
    double tail_bound = std::numeric_limits<double>::infinity();
};

inline constexpr double kEnvelopeMargin = 0.1;

inline PartsEvaluation eht_via_parts(const Rotation& alpha, const UnitPoint& x, const IntervalUnion& U, std::int64_t N,
                                     SumMode mode = SumMode::Automatic) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    const auto trace = weighted_partial_sums(alpha, x, U, WeightScheme::harmonic(), N, mode);
    PartsEvaluation out;
    out.N = N;
    out.direct = trace.S_enclosure(N);
    if (!trace.certified) {
        Rational sum(BigInt(trace.s(N)), BigInt(N));
        for (std::int64_t n = 1; n < N; ++n) sum += Rational(BigInt(trace.s(n)), BigInt(n) * BigInt(n + 1));
        out.exact = sum;
        out.value = Interval::from_rational(sum);
        out.identity_holds = sum == trace.S(N);
    } else {
        out.value = Interval::from_rational(Rational(BigInt(trace.s(N)), BigInt(N)));
        for (std::int64_t n = 1; n < N; ++n) out.value += Rational(BigInt(trace.s(n)), BigInt(n) * BigInt(n + 1));
        // Overlap of the two enclosures.
        out.identity_holds = !out.value.certainly_greater(out.direct) && !out.direct.certainly_greater(out.value);
    }

    // Log-log least squares over a geometric grid, on the running max of |s_n|.
    std::vector<double> running(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t n = 1; n <= N; ++n)
        running[static_cast<std::size_t>(n)] =
            std::max(running[static_cast<std::size_t>(n - 1)], static_cast<double>(std::llabs(trace.s(n))));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (double g = std::min<double>(10, static_cast<double>(N)); g <= static_cast<double>(N); g *= 1.25) {
        const auto n = static_cast<std::size_t>(g);
        const double lx = std::log(static_cast<double>(n)), ly = std::log(running[n]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++k;
    }
    const double slope = k >= 2 && sxx * k - sx * sx > 0 ? (k * sxy - sx * sy) / (k * sxx - sx * sx) : 1.0;
    out.exponent = std::max(0.0, slope) + kEnvelopeMargin;
    if (out.exponent < 1) {
        double C = 0;
        for (std::int64_t n = 1; n <= N; ++n)
            C = std::max(C, running[static_cast<std::size_t>(n)] / std::pow(static_cast<double>(n), out.exponent));
        out.constant = C;
        const double t = out.exponent;
        out.tail_bound = 2 * C * std::pow(static_cast<double>(N), t - 1) +
                         C * std::pow(static_cast<double>(N - 1), t - 1) / (1 - t);
    }
    return out;
}

}  // namespace eht
