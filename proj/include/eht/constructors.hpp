#pragma once

// Explicit rotation numbers: the divergent construction (digits chosen so that the
// weighted ergodic sum fails the Cauchy criterion) and the fast-growth Liouville
// construction a_{k+1} = q_k^{k-1} for which the sum converges.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eht/cf.hpp"
#include "eht/circle.hpp"
#include "eht/eht.hpp"

namespace eht {

struct DivergentBuildConfig {
    enum class Mode { Exact, Relaxed };

    std::size_t B = 1;
    std::size_t depth = 2;
    Mode mode = Mode::Exact;
    Rational A_relaxed = Rational(1, 5);
    BigInt growth_factor = 100;
    std::vector<BigInt> prefix;  // empty means [1]
    /// If the prefix ends at an even q, append the digit 1 (the next q is then odd).
    bool align_prefix = false;
};

/// Data behind one emitted digit a_{n+1}.
struct DivergentLevel {
    std::size_t n = 0;
    BigInt q_prev;  // q_{n-1} = kappa
    BigInt q_n;
    BigInt a_next;
    Rational A;
    std::optional<NStarCertificate> certificate;
    /// a_{n+1} q_n > Nstar. Always true in exact mode; informational in relaxed mode.
    bool certificate_satisfied = false;
};

struct DivergentConstruction {
    CFNumber alpha;
    DivergentBuildConfig::Mode mode = DivergentBuildConfig::Mode::Exact;
    std::size_t prefix_length = 0;
    std::vector<DivergentLevel> levels;
    bool q_all_odd = false;  // q_k odd for prefix length <= k <= depth
};

namespace detail {

/// Smallest a >= floor_value with a q_n + q_{n-1} odd (q_n odd).
inline BigInt with_odd_successor(BigInt a, const BigInt& q_prev) {
    // q_{n+1} parity = a + q_{n-1} (mod 2).
    if (is_even(a + q_prev) == false) return a;
    return a + 1;
}

inline void check_prefix_digits(const std::vector<BigInt>& prefix) {
    for (const auto& d : prefix)
        if (d < 1) throw std::invalid_argument("prefix digits must be >= 1");
}

}  // namespace detail

/// Builds [a_1 ... a_depth]. Each level n past the prefix emits a_{n+1}:
///   exact:   kappa = q_{n-1}, L = 1/q_n, N1 = q_n^2, A = 2B+1, smallest admissible a with a q_n > Nstar;
///   relaxed: smallest admissible a >= growth_factor (small enough to run, no certificate).
/// Admissible means q_{n+1} odd; with q_{n-1} odd that is exactly "a even".
inline DivergentConstruction build_divergent(const DivergentBuildConfig& cfg) {
    using Mode = DivergentBuildConfig::Mode;
    if (cfg.B < 1) throw std::invalid_argument("B must be >= 1");
    if (cfg.depth < 2) throw std::invalid_argument("depth must be >= 2");
    if (cfg.mode == Mode::Relaxed && cfg.A_relaxed <= 0) throw std::invalid_argument("relaxed A must be > 0");
    if (cfg.mode == Mode::Relaxed && cfg.growth_factor < 1) throw std::invalid_argument("growth factor must be >= 1");

    std::vector<BigInt> prefix = cfg.prefix.empty() ? std::vector<BigInt>{BigInt(1)} : cfg.prefix;
    detail::check_prefix_digits(prefix);
    {
        CFNumber probe(prefix);
        if (is_even(probe.q(prefix.size()))) {
            if (!cfg.align_prefix)
                throw std::invalid_argument("prefix parity violation: q_" + std::to_string(prefix.size()) + " = " +
                                            probe.q(prefix.size()).get_str() + " is even");
            prefix.push_back(BigInt(1));
        }
    }
    if (prefix.size() > cfg.depth) throw std::invalid_argument("prefix is longer than the requested depth");

    DivergentConstruction out;
    out.mode = cfg.mode;
    out.prefix_length = prefix.size();
    CFNumber alpha(prefix, {}, cfg.mode == Mode::Exact ? "divergent-exact" : "divergent-relaxed");

    const Rational A = cfg.mode == Mode::Exact ? Rational(2 * static_cast<long>(cfg.B) + 1) : cfg.A_relaxed;
    for (std::size_t n = prefix.size(); n < cfg.depth; ++n) {
        DivergentLevel level;
        level.n = n;
        level.q_prev = alpha.q(n - 1);
        level.q_n = alpha.q(n);
        level.A = A;
        if (is_even(level.q_n)) throw InvariantViolation("q_" + std::to_string(n) + " is even");

        auto certify = [&] {
            return compute_nstar(Rational(BigInt(1), level.q_n), level.q_prev, level.q_n * level.q_n, A);
        };
        if (cfg.mode == Mode::Exact) {
            level.certificate = certify();
            level.a_next = detail::with_odd_successor(level.certificate->Nstar / level.q_n + 1, level.q_prev);
        } else {
            level.a_next = detail::with_odd_successor(cfg.growth_factor, level.q_prev);
            try {
                level.certificate = certify();
            } catch (const Infeasible&) {
            }
        }
        level.certificate_satisfied = level.certificate && level.a_next * level.q_n > level.certificate->Nstar;
        if (cfg.mode == Mode::Exact && !level.certificate_satisfied)
            throw InvariantViolation("a_{n+1} q_n <= Nstar at level " + std::to_string(n));
        alpha.append(level.a_next);
        out.levels.push_back(std::move(level));
    }

    if (cfg.mode == Mode::Relaxed) {
        // Further digits follow the same rule, so orbit signs can be certified past depth.
        const BigInt growth = cfg.growth_factor;
        CFNumber::DigitRule rule = [growth](std::size_t index, const CFNumber& cf) {
            return detail::with_odd_successor(growth, cf.q(index - 2));
        };
        alpha = CFNumber(alpha.known_prefix(), rule, alpha.name());
    }
    out.q_all_odd = true;
    for (std::size_t k = out.prefix_length; k <= cfg.depth; ++k) out.q_all_odd = out.q_all_odd && is_odd(alpha.q(k));
    out.alpha = std::move(alpha);
    return out;
}

namespace presets {

/// Relaxed divergent construction with B = 1, A = 1/5, a_n = 100 for n >= 2.
inline CFNumber relaxed_divergent(std::size_t depth = 4) {
    DivergentBuildConfig cfg;
    cfg.mode = DivergentBuildConfig::Mode::Relaxed;
    cfg.depth = depth;
    auto built = build_divergent(cfg);
    built.alpha.set_name("relaxed-divergent");
    return built.alpha;
}

}  // namespace presets

/// Orbit blocks at level n: sigma_0 = O[1, q_{n-1}] and
/// sigma_l = O[q_{n-1} + (l-1) q_n + 1, q_{n-1} + l q_n] for l = 1..a_{n+1}.
struct SigmaBlocks {
    std::size_t n = 0;
    BigInt q_prev;
    BigInt q_n;
    BigInt a_next;
    std::int64_t block = 0;  // q_n as a machine integer
    long s0 = 0;
    std::vector<long> s;             // s(sigma_l), l = 1..a_{n+1}
    std::vector<std::int64_t> changes;  // l with s(sigma_l) != s(sigma_{l+1})
    bool odd_blocks_nonzero = true;  // every s(sigma_l) != 0 when q_n is odd
    bool change_bound_holds = true;  // |C| <= 2B
    SignSequence signs;              // f(T^m x), m = 1..q_{n+1}

    std::int64_t kappa() const { return q_prev.get_si(); }
    std::int64_t q_next() const { return kappa() + static_cast<std::int64_t>(s.size()) * block; }
};

/// Largest orbit sigma_blocks will enumerate.
inline constexpr std::int64_t kMaxBlockOrbit = 200000000;

inline SigmaBlocks sigma_blocks(const Rotation& alpha, const UnitPoint& x, const IntervalUnion& U, std::size_t n) {
    if (alpha.is_rational()) throw std::invalid_argument("sigma blocks need an irrational rotation");
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    const CFNumber& cf = alpha.cf();
    cf.require(n + 1);
    SigmaBlocks out;
    out.n = n;
    out.q_prev = cf.q(n - 1);
    out.q_n = cf.q(n);
    out.a_next = cf.digit(n + 1);
    const BigInt q_next = cf.q(n + 1);
    if (q_next > kMaxBlockOrbit)
        throw Infeasible("level " + std::to_string(n) + " needs " + q_next.get_str() + " orbit points; a_{n+1} = " +
                             out.a_next.get_str(),
                         out.a_next);
    out.block = out.q_n.get_si();
    const std::int64_t kappa = out.q_prev.get_si();
    const std::int64_t blocks = out.a_next.get_si();

    out.signs = orbit_signs(alpha, x, U, 1, q_next.get_si());
    for (std::int64_t m = 1; m <= kappa; ++m) out.s0 += out.signs.at(m);
    out.s.assign(static_cast<std::size_t>(blocks), 0);
    for (std::int64_t l = 1; l <= blocks; ++l) {
        long sum = 0;
        const std::int64_t start = kappa + (l - 1) * out.block;
        for (std::int64_t m = start + 1; m <= start + out.block; ++m) sum += out.signs.at(m);
        out.s[static_cast<std::size_t>(l - 1)] = sum;
        if (is_odd(out.q_n) && sum == 0) out.odd_blocks_nonzero = false;
    }
    for (std::int64_t l = 1; l < blocks; ++l)
        if (out.s[static_cast<std::size_t>(l - 1)] != out.s[static_cast<std::size_t>(l)]) out.changes.push_back(l);
    out.change_bound_holds = out.changes.size() <= 2 * U.count();
    return out;
}

/// c_m = +-f(T^{kappa+m} x), m = 1..a_{n+1} q_n, with the sign of every block sigma_l
/// flipped when s(sigma_l) < 0. A view over the raw signs, never materialized.
class AdjustedSigns {
public:
    explicit AdjustedSigns(const SigmaBlocks& blocks) : blocks_(&blocks) {}

    std::int64_t size() const { return static_cast<std::int64_t>(blocks_->s.size()) * blocks_->block; }
    int at(std::int64_t m) const {
        if (m < 1 || m > size()) throw std::out_of_range("adjusted index out of range");
        const auto l = static_cast<std::size_t>((m - 1) / blocks_->block);
        const int raw = blocks_->signs.at(blocks_->kappa() + m);
        return blocks_->s[l] < 0 ? -raw : raw;
    }

private:
    const SigmaBlocks* blocks_;
};

/// Whether s_m/(m+kappa) >= L/3 for every N1 < m <= size of the adjusted view,
/// with s_m the partial sums of the adjusted signs.
inline bool drift_hypothesis_holds(const AdjustedSigns& c, const Rational& L, const BigInt& kappa, const BigInt& N1) {
    long s = 0;
    for (std::int64_t m = 1; m <= c.size(); ++m) {
        s += c.at(m);
        if (BigInt(m) > N1 && Rational(s) * 3 < L * (BigInt(m) + kappa)) return false;
    }
    return true;
}

/// Window between consecutive change points, with its sum of f(T^m x)/m.
struct TauWindow {
    std::int64_t first = 0;
    std::int64_t last = 0;
    Interval sum;
};

/// tau_0 = [1, q_{n-1} + l*_1 q_n], tau_i = [q_{n-1} + l*_i q_n + 1, q_{n-1} + l*_{i+1} q_n], and
/// tau_b ending at q_{n+1}. One of them carries a sum of absolute value >= 1 in exact mode.
inline std::vector<TauWindow> tau_windows(const SigmaBlocks& blocks) {
    std::vector<std::int64_t> cuts{0};
    for (auto l : blocks.changes) cuts.push_back(blocks.kappa() + l * blocks.block);
    cuts.push_back(blocks.q_next());
    std::vector<TauWindow> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        TauWindow w;
        w.first = cuts[i] + 1;
        w.last = cuts[i + 1];
        for (auto m = w.first; m <= w.last; ++m)
            w.sum.add_signed_reciprocal(blocks.signs.at(m), static_cast<unsigned long>(m));
        out.push_back(std::move(w));
    }
    return out;
}

/// a_{k+1} = q_k^{k-1} for every k >= prefix length. The result extends lazily.
inline CFNumber build_liouville_convergent(const std::vector<BigInt>& prefix, std::size_t depth) {
    if (prefix.empty()) throw std::invalid_argument("prefix must be nonempty");
    if (depth < prefix.size()) throw std::invalid_argument("depth must be >= prefix length");
    detail::check_prefix_digits(prefix);
    CFNumber::DigitRule rule = [](std::size_t index, const CFNumber& cf) {
        const std::size_t k = index - 1;
        return pow(cf.q(k), static_cast<unsigned long>(k - 1));
    };
    CFNumber alpha(prefix, rule, "liouville");
    alpha.require(depth);
    return alpha;
}

namespace presets {

/// The fast-growth construction from prefix [1]: digits 1, 1, 2, 25, 2048383, ...
inline CFNumber thm3(std::size_t depth = 6) {
    auto cf = build_liouville_convergent({BigInt(1)}, depth);
    cf.set_name("thm3");
    return cf;
}

}  // namespace presets

/// ||q_k alpha|| < 1/q_{k+1} <= q_k^{-v}.
struct LiouvilleWitness {
    std::size_t k = 0;
    BigInt q_k;
    Rational bound;  // q_k^{-v}; rounded down when v is not an integer
    Rational gap;    // 1/q_{k+1}, a strict upper bound on ||q_k alpha||
};

/// Witnesses k <= depth-1 with q_k >= 2 and q_{k+1} >= q_k^v, decided exactly.
inline std::vector<LiouvilleWitness> verify_liouville(const CFNumber& alpha, const Rational& v, std::size_t depth) {
    if (v <= 0) throw std::invalid_argument("v must be > 0");
    alpha.require(depth);
    const BigInt num = v.get_num();
    const BigInt den = v.get_den();
    if (!num.fits_ulong_p() || !den.fits_ulong_p()) throw std::invalid_argument("v is too large");
    std::vector<LiouvilleWitness> out;
    for (std::size_t k = 1; k + 1 <= depth; ++k) {
        const BigInt& q = alpha.q(k);
        const BigInt& next = alpha.q(k + 1);
        if (q < 2) continue;  // q = 1 approximations say nothing
        if (pow(next, den.get_ui()) < pow(q, num.get_ui())) continue;
        LiouvilleWitness w;
        w.k = k;
        w.q_k = q;
        w.gap = Rational(BigInt(1), next);
        if (den == 1) {
            w.bound = Rational(BigInt(1), pow(q, num.get_ui()));
        } else {
            Interval e = (Interval::from_rational(v).negated() * log_of_integer(q)).exp();
            w.bound = e.lower_rational();
        }
        out.push_back(std::move(w));
    }
    return out;
}

struct GrowthCheck {
    std::size_t k = 0;
    bool lower = false;  // q_k^k <= q_{k+1}
    bool upper = false;  // q_{k+1} <= 2 q_k^k
};

struct GrowthReport {
    bool ok = true;
    std::vector<GrowthCheck> checks;
    std::vector<double> terms;     // k log(q_k)/q_{k-1}, k = 2..depth
    std::vector<double> partials;  // running sums of terms
};

/// Checks q_k^k <= q_{k+1} <= 2 q_k^k for 1 < k < depth and reports the summability
/// diagnostic sum_{k <= depth} k log(q_k)/q_{k-1}.
inline GrowthReport verify_growth_bounds(const CFNumber& alpha, std::size_t depth) {
    alpha.require(depth);
    GrowthReport rep;
    for (std::size_t k = 2; k + 1 <= depth; ++k) {
        const BigInt qk_k = pow(alpha.q(k), static_cast<unsigned long>(k));
        GrowthCheck c;
        c.k = k;
        c.lower = qk_k <= alpha.q(k + 1);
        c.upper = alpha.q(k + 1) <= 2 * qk_k;
        rep.ok = rep.ok && c.lower && c.upper;
        rep.checks.push_back(c);
    }
    double total = 0;
    for (std::size_t k = 2; k <= depth; ++k) {
        const double t = static_cast<double>(k) * log_of(alpha.q(k)) / to_double(Rational(alpha.q(k - 1)));
        total += t;
        rep.terms.push_back(t);
        rep.partials.push_back(total);
    }
    return rep;
}

}  // namespace eht
