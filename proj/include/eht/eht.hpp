#pragma once

// Weighted ergodic sums sum_n f(T^n x) b_n, summation by parts, the N* certificate
// for sums with eventually positive drift, and Cauchy-gap scanning.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eht/certified.hpp"
#include "eht/circle.hpp"

namespace eht {

/// Positive non-increasing weights b_n, n >= 1.
class WeightScheme {
public:
    enum class Kind { Harmonic, Custom };

    /// b_n = 1/(n + offset).
    static WeightScheme harmonic(BigInt offset = 0) {
        if (offset < 0) throw std::invalid_argument("harmonic weight offset must be >= 0");
        WeightScheme w;
        w.kind_ = Kind::Harmonic;
        w.offset_ = std::move(offset);
        w.label_ = w.offset_ == 0 ? "harmonic" : "harmonic+" + w.offset_.get_str();
        return w;
    }

    static WeightScheme custom(std::function<Rational(std::int64_t)> terms, std::string label) {
        if (!terms) throw std::invalid_argument("custom weights need a term function");
        WeightScheme w;
        w.kind_ = Kind::Custom;
        w.terms_ = std::move(terms);
        w.label_ = std::move(label);
        return w;
    }

    Kind kind() const noexcept { return kind_; }
    const BigInt& offset() const noexcept { return offset_; }
    const std::string& label() const noexcept { return label_; }

    Rational operator()(std::int64_t n) const {
        if (n < 1) throw std::out_of_range("weights are indexed from 1");
        if (kind_ == Kind::Harmonic) return Rational(BigInt(1), BigInt(n) + offset_);
        return terms_(n);
    }

    /// The denominator n + offset when b_n = 1/(n + offset) fits a machine word.
    std::optional<unsigned long> reciprocal_word(std::int64_t n) const {
        if (kind_ != Kind::Harmonic) return std::nullopt;
        BigInt d = BigInt(n) + offset_;
        if (!d.fits_ulong_p()) return std::nullopt;
        return d.get_ui();
    }

private:
    Kind kind_ = Kind::Harmonic;
    BigInt offset_ = 0;
    std::function<Rational(std::int64_t)> terms_;
    std::string label_ = "harmonic";
};

enum class SumMode { Exact, Certified, Automatic };

/// Above this many terms Automatic mode switches from exact rationals to intervals.
inline constexpr std::int64_t kExactTraceLimit = 10000;

/// c_n, s_n = c_1 + ... + c_n and S_n = c_1 b_1 + ... + c_n b_n for n = 1..N.
struct PartialSumTrace {
    WeightScheme weights;
    bool certified = false;
    std::vector<std::int8_t> signs;
    std::vector<std::int64_t> counts;
    std::vector<Rational> sums;        // exact mode
    std::vector<Interval> enclosures;  // certified mode

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(signs.size()); }
    int c(std::int64_t n) const { return signs.at(index(n)); }
    std::int64_t s(std::int64_t n) const { return counts.at(index(n)); }
    const Rational& S(std::int64_t n) const {
        if (certified) throw std::logic_error("exact partial sums unavailable in certified mode");
        return sums.at(index(n));
    }
    /// S_n as an interval in either mode (a point interval in exact mode).
    Interval S_enclosure(std::int64_t n, mpfr_prec_t prec = kDefaultPrecision) const {
        return certified ? enclosures.at(index(n)) : Interval::from_rational(sums.at(index(n)), prec);
    }

private:
    static std::size_t index(std::int64_t n) {
        if (n < 1) throw std::out_of_range("trace is indexed from 1");
        return static_cast<std::size_t>(n - 1);
    }
};

/// Trace of an explicit sign sequence c_1..c_N.
inline PartialSumTrace trace_from_signs(const std::vector<std::int8_t>& signs, const WeightScheme& w,
                                        SumMode mode = SumMode::Automatic) {
    const auto N = static_cast<std::int64_t>(signs.size());
    PartialSumTrace t;
    t.weights = w;
    t.certified = mode == SumMode::Certified || (mode == SumMode::Automatic && N > kExactTraceLimit);
    t.signs = signs;
    t.counts.reserve(signs.size());
    if (t.certified)
        t.enclosures.reserve(signs.size());
    else
        t.sums.reserve(signs.size());

    std::int64_t s = 0;
    Rational exact = 0;
    Interval enclosure;
    std::optional<Rational> previous_weight;
    for (std::int64_t n = 1; n <= N; ++n) {
        const int c = signs[static_cast<std::size_t>(n - 1)];
        if (c != 1 && c != -1) throw std::invalid_argument("signs must be +1 or -1");
        s += c;
        t.counts.push_back(s);

        auto word = w.reciprocal_word(n);
        if (t.certified && word) {
            enclosure.add_signed_reciprocal(c, *word);
        } else {
            Rational b = w(n);
            if (w.kind() == WeightScheme::Kind::Custom) {
                if (b <= 0) throw std::invalid_argument("weights must be positive");
                if (previous_weight && b > *previous_weight) throw std::invalid_argument("weights must be non-increasing");
                previous_weight = b;
            }
            if (t.certified)
                enclosure += Rational(c * b);
            else
                exact += c * b;
        }
        if (t.certified)
            t.enclosures.push_back(enclosure);
        else
            t.sums.push_back(exact);
    }
    return t;
}

/// Trace of c_n = f(T^n x) with f = 2 chi_U - 1, n = 1..N.
inline PartialSumTrace weighted_partial_sums(const Rotation& alpha, const UnitPoint& x, const IntervalUnion& U,
                                             const WeightScheme& w, std::int64_t N,
                                             SumMode mode = SumMode::Automatic) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return trace_from_signs(orbit_signs(alpha, x, U, 1, N).values, w, mode);
}

/// Right-hand side of sum c_m/(m+k) = s_N/(N+k+1) + sum_{m<=N} s_m/((m+k)(m+k+1)).
struct PartsSplit {
    Rational boundary;
    Rational series;
    Rational total() const { return boundary + series; }
};

inline PartsSplit summation_by_parts(const PartialSumTrace& trace, const BigInt& kappa) {
    if (trace.weights.kind() != WeightScheme::Kind::Harmonic || trace.weights.offset() != kappa)
        throw std::invalid_argument("summation by parts needs a trace with weights 1/(m+kappa), kappa = " +
                                    kappa.get_str());
    if (trace.size() < 1) throw std::invalid_argument("empty trace");
    PartsSplit out;
    for (std::int64_t m = 1; m <= trace.size(); ++m) {
        const BigInt d = BigInt(m) + kappa;
        out.series += Rational(BigInt(trace.s(m)), d * (d + 1));
    }
    const std::int64_t N = trace.size();
    out.boundary = Rational(BigInt(trace.s(N)), BigInt(N) + kappa + 1);
    out.boundary.canonicalize();
    return out;
}

/// Certificate that every +-1 sequence with s_n/(n+kappa) >= L/3 for all n > N1
/// has sum_{m<=N} c_m/(m+kappa) > A for every N >= Nstar.
struct NStarCertificate {
    Rational L;
    BigInt kappa;
    BigInt N1;
    Rational A;
    Rational E;             // sum_{m<=N1} m/((m+kappa)(m+kappa+1)), or an upper bound
    bool E_exact = true;
    Rational threshold;     // (A + E)|3/L|
    BigInt N2;              // least N with sum_{m<=N} 1/(m+kappa+1) > threshold, or an upper bound
    bool N2_exact = true;
    BigInt n_sound;         // least n > N1 where the tail-only lower bound already exceeds A
    bool n_sound_exact = true;
    BigInt Nstar;
};

namespace detail {

/// Above this bit size the least crossing is replaced by a certified upper bound.
inline constexpr std::size_t kCrossingExactBits = 1024;

inline std::size_t bit_size(const BigInt& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

/// Least n >= n_min with H_{n+shift} - H_base + [ramp](n+kappa)/(n+kappa+1) > T.
/// The left side increases with n, so bisection on a certified predicate is exact.
struct Crossing {
    BigInt value;
    bool exact;
};

inline Crossing least_crossing(const BigInt& n_min, const BigInt& shift, const BigInt& base, bool ramp,
                               const BigInt& kappa, const Rational& T) {
    constexpr mpfr_prec_t kPrec = 192;
    // Upper bracket from H_m > ln m + gamma: any n with n + shift > exp(T + H_base - gamma) works.
    const Interval exponent = Interval::from_rational(T, kPrec) + harmonic(base, kPrec) - Interval::euler_gamma(kPrec);
    if (!exponent.certainly_at_most(Rational(700000000)))
        throw Infeasible("crossing index exceeds exp(7e8); threshold has " +
                             std::to_string(mpz_sizeinbase(floor_of(T).get_mpz_t(), 10)) + " digits",
                         floor_of(T));
    const Interval bound = exponent.exp();
    BigInt floor_bound;
    mpfr_get_z(floor_bound.get_mpz_t(), bound.hi().get(), MPFR_RNDD);
    BigInt hi = floor_bound + 1 - shift;
    if (hi < n_min) hi = n_min;

    const std::size_t bits = bit_size(hi);
    if (bits > kCrossingExactBits) return {hi, false};

    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<std::size_t>(kPrec, bits + 96));
    const Interval h_base = harmonic_tight(base, prec, 1000000);
    bool settled = true;
    // True only when certain. An unresolved comparison counts as false, which keeps
    // hi certified; the result is then an upper bound rather than the least index.
    auto exceeds = [&](const BigInt& n) {
        const BigInt top = n + shift;
        Interval value = top - base <= 256 ? harmonic_range(base, top, prec) : harmonic_tight(top, prec) - h_base;
        if (ramp) value += Rational(n + kappa, n + kappa + 1);
        if (value.certainly_greater(T)) return true;
        if (value.certainly_at_most(T)) return false;
        if (top - base <= 20000) {
            Rational exact = 0;
            for (BigInt m = base + 1; m <= top; ++m) exact += Rational(BigInt(1), m);
            if (ramp) exact += Rational(n + kappa, n + kappa + 1);
            return exact > T;
        }
        settled = false;
        return false;
    };

    BigInt lo = n_min;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (exceeds(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return {hi, settled};
}

}  // namespace detail

/// Exact E = sum_{m=1}^{N1} m/((m+kappa)(m+kappa+1)) for small N1.
inline Rational nstar_E_exact(const BigInt& kappa, const BigInt& N1) {
    Rational E = 0;
    for (BigInt m = 1; m <= N1; ++m) E += Rational(m, (m + kappa) * (m + kappa + 1));
    return E;
}

/// Certified enclosure of E via
///   E = (kappa+1)(H_{N1+kappa+1} - H_{kappa+1}) - kappa (H_{N1+kappa} - H_kappa).
inline Interval nstar_E_enclosure(const BigInt& kappa, const BigInt& N1, mpfr_prec_t prec = 192) {
    Interval first = Interval::from_integer(kappa + 1, prec) * harmonic_range(kappa + 1, N1 + kappa + 1, prec);
    Interval second = Interval::from_integer(kappa, prec) * harmonic_range(kappa, N1 + kappa, prec);
    return first - second;
}

inline constexpr long kExactEMax = 4096;

inline NStarCertificate compute_nstar(const Rational& L, const BigInt& kappa, const BigInt& N1, const Rational& A) {
    if (L == 0) throw std::invalid_argument("L must be nonzero");
    if (kappa < 0) throw std::invalid_argument("kappa must be >= 0");
    if (N1 < 1) throw std::invalid_argument("N1 must be >= 1");
    if (A <= 0) throw std::invalid_argument("A must be > 0");

    NStarCertificate cert;
    cert.L = L;
    cert.kappa = kappa;
    cert.N1 = N1;
    cert.A = A;
    if (N1 <= kExactEMax) {
        cert.E = nstar_E_exact(kappa, N1);
    } else {
        // Rounding E up only raises the thresholds below.
        cert.E = nstar_E_enclosure(kappa, N1).upper_rational();
        cert.E_exact = false;
    }
    cert.threshold = (A + cert.E) * 3 / abs(L);

    auto n2 = detail::least_crossing(BigInt(1), kappa + 1, kappa + 1, false, kappa, cert.threshold);
    cert.N2 = n2.value;
    cert.N2_exact = n2.exact;

    // With s_m >= (L/3)(m+kappa) only for m > N1 the sum is at least
    // (L/3)[(n+kappa)/(n+kappa+1) + sum_{N1<m<=n} 1/(m+kappa+1)] - E.
    auto sound = detail::least_crossing(N1 + 1, kappa + 1, N1 + kappa + 1, true, kappa, cert.threshold);
    cert.n_sound = sound.value;
    cert.n_sound_exact = sound.exact;

    cert.Nstar = std::max(cert.N2, cert.n_sound);
    if (cert.Nstar < N1) cert.Nstar = N1;
    return cert;
}

/// A window [n1, n2] whose weighted sum exceeds the scan threshold in absolute value.
struct GapWitness {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    Interval value;                // sum_{n1..n2} c_n b_n
    std::optional<Rational> exact; // set in exact mode
};

struct GapScanReport {
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    Rational theta;
    std::vector<GapWitness> witnesses;
    Interval spread;  // max - min of prefix sums over the range, prefix 0 included
    std::int64_t spread_n1 = 0;
    std::int64_t spread_n2 = 0;
};

namespace detail {

/// Greedy single pass over prefix sums P_j = sum_{n_lo..j} c_n b_n. A witness closes as
/// soon as the current prefix leaves the running [min, max] band by more than theta;
/// the band then restarts at the current prefix, so witnesses are disjoint.
template <class Value, class Ops>
GapScanReport scan_prefixes(const std::vector<std::int8_t>& signs, std::int64_t n_lo, const WeightScheme& w,
                            const Rational& theta, Ops ops) {
    GapScanReport report;
    report.n_lo = n_lo;
    report.n_hi = n_lo + static_cast<std::int64_t>(signs.size()) - 1;
    report.theta = theta;

    Value prefix = ops.zero();
    Value band_min = prefix, band_max = prefix;
    std::int64_t band_min_at = n_lo - 1, band_max_at = n_lo - 1;
    Value global_min = prefix, global_max = prefix;
    std::int64_t global_min_at = n_lo - 1, global_max_at = n_lo - 1;
    std::int64_t best_n1 = n_lo, best_n2 = n_lo;
    Value best = ops.zero();

    for (std::size_t i = 0; i < signs.size(); ++i) {
        const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
        ops.add(prefix, signs[i], w, n);

        // Largest |P_j - P_i| with i < j so far, for the global spread report.
        if (ops.less(best, ops.sub(prefix, global_min))) {
            best = ops.sub(prefix, global_min);
            best_n1 = global_min_at + 1;
            best_n2 = n;
        }
        if (ops.less(best, ops.sub(global_max, prefix))) {
            best = ops.sub(global_max, prefix);
            best_n1 = global_max_at + 1;
            best_n2 = n;
        }
        if (ops.less(prefix, global_min)) global_min = prefix, global_min_at = n;
        if (ops.less(global_max, prefix)) global_max = prefix, global_max_at = n;

        std::optional<std::int64_t> start;
        Value window = ops.zero();
        if (ops.exceeds(ops.sub(prefix, band_min), theta)) {
            start = band_min_at + 1;
            window = ops.sub(prefix, band_min);
        } else if (ops.exceeds(ops.sub(band_max, prefix), theta)) {
            start = band_max_at + 1;
            window = ops.sub(prefix, band_max);
        }
        if (start) {
            report.witnesses.push_back(ops.witness(*start, n, window));
            band_min = band_max = prefix;
            band_min_at = band_max_at = n;
            continue;
        }
        if (ops.less(prefix, band_min)) band_min = prefix, band_min_at = n;
        if (ops.less(band_max, prefix)) band_max = prefix, band_max_at = n;
    }
    report.spread = ops.to_interval(best);
    report.spread_n1 = best_n1;
    report.spread_n2 = best_n2;
    return report;
}

struct ExactOps {
    Rational zero() const { return 0; }
    void add(Rational& p, int c, const WeightScheme& w, std::int64_t n) const { p += c * w(n); }
    Rational sub(const Rational& a, const Rational& b) const { return a - b; }
    bool less(const Rational& a, const Rational& b) const { return a < b; }
    bool exceeds(const Rational& v, const Rational& theta) const { return v > theta; }
    Interval to_interval(const Rational& v) const { return Interval::from_rational(v); }
    GapWitness witness(std::int64_t a, std::int64_t b, const Rational& v) const {
        return {a, b, Interval::from_rational(v), v};
    }
};

/// Interval arithmetic; extrema are tracked by midpoint and every reported comparison
/// against theta uses the certified lower bound of |window|.
struct CertifiedOps {
    Interval zero() const { return Interval(); }
    void add(Interval& p, int c, const WeightScheme& w, std::int64_t n) const {
        if (auto word = w.reciprocal_word(n))
            p.add_signed_reciprocal(c, *word);
        else
            p += Rational(c * w(n));
    }
    Interval sub(const Interval& a, const Interval& b) const { return a - b; }
    bool less(const Interval& a, const Interval& b) const { return a.midpoint() < b.midpoint(); }
    bool exceeds(const Interval& v, const Rational& theta) const { return v.certainly_greater(theta); }
    Interval to_interval(const Interval& v) const { return v; }
    GapWitness witness(std::int64_t a, std::int64_t b, const Interval& v) const {
        // Report the signed window sum; v is either P - min (positive) or P - max (negative).
        return {a, b, v, std::nullopt};
    }
};

}  // namespace detail

/// Disjoint windows [n1, n2] in [n_lo, n_hi] with |sum c_n b_n| > theta.
/// A witness exists iff the spread of prefix sums over the range exceeds theta.
inline GapScanReport cauchy_gap_scan(const Rotation& alpha, const UnitPoint& x, const IntervalUnion& U,
                                     const WeightScheme& w, std::int64_t n_lo, std::int64_t n_hi,
                                     const Rational& theta, SumMode mode = SumMode::Automatic) {
    if (theta < 0) throw std::invalid_argument("theta must be >= 0");
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("invalid scan range");
    auto seq = orbit_signs(alpha, x, U, n_lo, n_hi);
    const bool certified = mode == SumMode::Certified || (mode == SumMode::Automatic && n_hi - n_lo + 1 > kExactTraceLimit);
    if (certified) {
        // Witnesses use the strict certified comparison, so theta = 0 still needs a nonzero window.
        return detail::scan_prefixes<Interval>(seq.values, n_lo, w, theta, detail::CertifiedOps{});
    }
    return detail::scan_prefixes<Rational>(seq.values, n_lo, w, theta, detail::ExactOps{});
}

/// Same scan over an explicit sign sequence indexed from n_lo.
inline GapScanReport cauchy_gap_scan(const std::vector<std::int8_t>& signs, std::int64_t n_lo, const WeightScheme& w,
                                     const Rational& theta, SumMode mode = SumMode::Automatic) {
    if (theta < 0) throw std::invalid_argument("theta must be >= 0");
    const bool certified = mode == SumMode::Certified ||
                           (mode == SumMode::Automatic && static_cast<std::int64_t>(signs.size()) > kExactTraceLimit);
    if (certified) return detail::scan_prefixes<Interval>(signs, n_lo, w, theta, detail::CertifiedOps{});
    return detail::scan_prefixes<Rational>(signs, n_lo, w, theta, detail::ExactOps{});
}

/// Finite-depth look at sum_n n(b_n - b_{n+1}).
struct WeightConditionReport {
    std::int64_t N = 0;
    Interval partial;
    std::optional<Rational> exact;
    Interval last_doubling;  // partial(N) - partial(N/2)
    std::string hint;        // heuristic only; says nothing about the limit
};

inline WeightConditionReport check_weight_condition(const WeightScheme& w, std::int64_t N) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    WeightConditionReport out;
    out.N = N;
    const bool exact = N <= 5000;
    Rational total = 0;
    Interval sum;
    Interval at_half;
    Rational prev = w(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        Rational next = w(n + 1);
        Rational term = n * (prev - next);
        if (exact)
            total += term;
        else
            sum += Interval::from_rational(term);
        if (n == N / 2) at_half = exact ? Interval::from_rational(total) : sum;
        prev = std::move(next);
    }
    if (exact) {
        out.exact = total;
        sum = Interval::from_rational(total);
    }
    out.partial = sum;
    out.last_doubling = sum - at_half;
    // Harmonic-type weights add about ln 2 per doubling; summable ones add almost nothing.
    out.hint = out.last_doubling.certainly_greater(Rational(1, 10)) ? "growing (divergence-like)" : "saturating";
    return out;
}

}  // namespace eht
