#pragma once

// Decomposition of a +-1 sign sequence into near-alternating subsequences, level by
// level along a hierarchy q_1, q_2, ... with q_1 > 4B. Level i takes, from every window
// of length Q_i = q_1 ... q_i, count_i (+1, -1) pairs out of the residual X_{i-1}.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eht/cf.hpp"
#include "eht/certified.hpp"
#include "eht/circle.hpp"

namespace eht {

/// xi_i, Q_i and the derived residual sizes r_i = 4B Q_{i-1} + xi_i (r_0 = 1), together
/// with count_i = (r_{i-1} q_i - 4B Q_{i-1} - xi_i)/2 and the parity rule
/// xi_i = r_{i-1} q_i - 4B Q_{i-1} (mod 2).
struct ParitySequence {
    std::size_t B = 1;
    std::vector<BigInt> q;       // q[0] = q_1
    std::vector<int> xi_values;  // xi_values[0] = xi_1
    std::vector<BigInt> Q_values;      // Q_values[i] = Q_i, Q_0 = 1
    std::vector<BigInt> r_values;      // r_values[i] = r_i, r_0 = 1
    std::vector<BigInt> count_values;  // count_values[0] = count_1

    std::size_t depth() const noexcept { return q.size(); }
    const BigInt& q_at(std::size_t i) const { return q.at(i - 1); }
    int xi(std::size_t i) const { return xi_values.at(i - 1); }
    const BigInt& Q(std::size_t i) const { return Q_values.at(i); }
    const BigInt& r(std::size_t i) const { return r_values.at(i); }
    const BigInt& count(std::size_t i) const { return count_values.at(i - 1); }
};

inline ParitySequence parity_sequence(const std::vector<BigInt>& q, std::size_t B, std::size_t depth) {
    if (B < 1) throw std::invalid_argument("B must be >= 1");
    if (q.size() < depth) throw std::invalid_argument("hierarchy has fewer than depth entries");
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    const BigInt fourB = 4 * static_cast<unsigned long>(B);
    if (q[0] <= fourB)
        throw std::invalid_argument("q_1 = " + q[0].get_str() + " must exceed 4B = " + fourB.get_str() +
                                    "; start the hierarchy at the first q_k > 4B (see shifted_hierarchy)");
    ParitySequence ps;
    ps.B = B;
    ps.q.assign(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(depth));
    ps.Q_values.push_back(BigInt(1));
    ps.r_values.push_back(BigInt(1));
    for (std::size_t i = 1; i <= depth; ++i) {
        const BigInt& qi = ps.q[i - 1];
        if (qi < 1) throw std::invalid_argument("hierarchy entries must be >= 1");
        const BigInt raw = ps.r_values[i - 1] * qi - fourB * ps.Q_values[i - 1];
        const int xi = is_odd(raw) ? 1 : 0;
        const BigInt twice = raw - xi;
        if (twice < 0) throw InvariantViolation("negative pair count at level " + std::to_string(i));
        ps.xi_values.push_back(xi);
        ps.count_values.push_back(twice / 2);
        ps.Q_values.push_back(ps.Q_values[i - 1] * qi);
        ps.r_values.push_back(fourB * ps.Q_values[i - 1] + xi);
    }
    return ps;
}

/// The continued-fraction denominators starting at the first q_k > 4B.
struct ShiftedHierarchy {
    std::size_t shift = 0;  // q'_j = q_{j + shift}
    std::vector<BigInt> q;
};

inline ShiftedHierarchy shifted_hierarchy(const CFNumber& cf, std::size_t B, std::size_t levels) {
    const BigInt fourB = 4 * static_cast<unsigned long>(B);
    ShiftedHierarchy out;
    std::size_t k = 1;
    while (cf.q(k) <= fourB) ++k;
    out.shift = k - 1;
    for (std::size_t j = 0; j < levels; ++j) out.q.push_back(cf.q(k + j));
    return out;
}

/// Level i of a decomposition. Pair (w, l) is stored at pairs[2 (w count + l)] and the
/// next slot, smaller index first; slot l of every window forms subsequence l.
struct DecompositionLevel {
    std::size_t i = 0;
    std::uint64_t window = 0;   // Q_i
    std::uint64_t windows = 0;  // N / Q_i
    std::uint64_t count = 0;    // pairs per window = number of subsequences
    std::uint64_t residual_per_window = 0;  // r_i
    std::vector<std::uint32_t> pairs;

    std::uint32_t first_index(std::uint64_t l) const { return pairs.at(2 * l); }  // l is 0-based
};

struct Decomposition {
    ParitySequence parity;
    std::size_t shift = 0;
    std::uint64_t N = 0;
    std::vector<DecompositionLevel> levels;
    std::vector<std::uint32_t> residual;  // X_levels, increasing
};

/// Explicit subsequence (b_n^{(i,l)}) of a decomposition, l 1-based.
struct NearAlternatingSeq {
    std::size_t level = 0;
    std::uint64_t slot = 0;
    std::vector<std::uint32_t> indices;
    std::vector<int> values;
};

/// {v_{2j-1}, v_{2j}} = {+1, -1} for every j.
inline bool is_pair_permutation(const std::vector<int>& values) {
    if (values.size() % 2 != 0) return false;
    for (std::size_t j = 0; j < values.size(); j += 2)
        if (values[j] + values[j + 1] != 0 || (values[j] != 1 && values[j] != -1)) return false;
    return true;
}

/// Greedy extraction over [1, N]. N must be a multiple of Q_levels and below 2^32.
/// Throws InvariantViolation when a window has too few +1 or -1 left, which genuine
/// rotation signs never do.
inline Decomposition decompose(const SignSequence& signs, const std::vector<BigInt>& q, std::size_t B,
                               std::size_t levels, std::size_t shift = 0) {
    if (signs.first != 1) throw std::invalid_argument("signs must start at index 1");
    Decomposition out;
    out.parity = parity_sequence(q, B, levels);
    out.shift = shift;
    const BigInt N = BigInt(static_cast<unsigned long>(signs.values.size()));
    if (N == 0 || N % out.parity.Q(levels) != 0)
        throw std::invalid_argument("N = " + N.get_str() + " is not a positive multiple of Q_" +
                                    std::to_string(levels) + " = " + out.parity.Q(levels).get_str());
    if (N > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("N must fit in 32 bits");
    out.N = N.get_ui();

    std::vector<std::uint32_t> X(out.N);
    for (std::uint32_t n = 0; n < out.N; ++n) X[n] = n + 1;
    std::vector<std::uint32_t> plus, minus, next;
    for (std::size_t i = 1; i <= levels; ++i) {
        DecompositionLevel lv;
        lv.i = i;
        lv.window = out.parity.Q(i).get_ui();
        lv.windows = out.N / lv.window;
        lv.count = out.parity.count(i).get_ui();
        lv.residual_per_window = out.parity.r(i).get_ui();
        const std::uint64_t chunk = out.parity.r(i - 1).get_ui() * out.parity.q_at(i).get_ui();
        if (X.size() != chunk * lv.windows) throw InvariantViolation("residual size mismatch at level " + std::to_string(i));
        lv.pairs.reserve(2 * lv.count * lv.windows);
        next.clear();
        next.reserve(lv.residual_per_window * lv.windows);
        for (std::uint64_t w = 0; w < lv.windows; ++w) {
            plus.clear();
            minus.clear();
            for (std::uint64_t k = w * chunk; k < (w + 1) * chunk; ++k) {
                const std::uint32_t n = X[k];
                (signs.at(n) > 0 ? plus : minus).push_back(n);
            }
            if (plus.size() < lv.count || minus.size() < lv.count)
                throw InvariantViolation("count shortfall at level " + std::to_string(i) + ", window " +
                                         std::to_string(w + 1) + ": need " + std::to_string(lv.count) +
                                         " of each sign, have " + std::to_string(plus.size()) + " +1 and " +
                                         std::to_string(minus.size()) + " -1");
            for (std::uint64_t l = 0; l < lv.count; ++l) {
                lv.pairs.push_back(std::min(plus[l], minus[l]));
                lv.pairs.push_back(std::max(plus[l], minus[l]));
            }
            const auto mid = next.size();
            next.insert(next.end(), plus.begin() + static_cast<std::ptrdiff_t>(lv.count), plus.end());
            next.insert(next.end(), minus.begin() + static_cast<std::ptrdiff_t>(lv.count), minus.end());
            std::inplace_merge(next.begin() + static_cast<std::ptrdiff_t>(mid),
                               next.begin() + static_cast<std::ptrdiff_t>(mid + plus.size() - lv.count), next.end());
            if (next.size() - mid != lv.residual_per_window)
                throw InvariantViolation("residual cardinality mismatch at level " + std::to_string(i));
        }
        X.swap(next);
        out.levels.push_back(std::move(lv));
    }
    out.residual = std::move(X);
    return out;
}

inline NearAlternatingSeq subsequence(const Decomposition& d, const SignSequence& signs, std::size_t level,
                                      std::uint64_t l) {
    const auto& lv = d.levels.at(level - 1);
    if (l < 1 || l > lv.count) throw std::out_of_range("subsequence slot out of range");
    NearAlternatingSeq s;
    s.level = level;
    s.slot = l;
    for (std::uint64_t w = 0; w < lv.windows; ++w) {
        for (int k = 0; k < 2; ++k) {
            const std::uint32_t n = lv.pairs[2 * (w * lv.count + l - 1) + static_cast<std::uint64_t>(k)];
            s.indices.push_back(n);
            s.values.push_back(signs.at(n));
        }
    }
    return s;
}

/// Structural audit: every index in [1, N] used once, per-window balance, and pair-permutation
/// of every subsequence.
struct PartitionReport {
    bool partition = true;
    bool pair_permutations = true;
    bool residual_cardinalities = true;
};

inline PartitionReport audit_partition(const Decomposition& d, const SignSequence& signs) {
    PartitionReport rep;
    std::vector<bool> seen(d.N + 1, false);
    auto mark = [&](std::uint32_t n) {
        if (n < 1 || n > d.N || seen[n]) rep.partition = false;
        else seen[n] = true;
    };
    for (const auto& lv : d.levels) {
        for (std::uint64_t k = 0; k < lv.pairs.size(); k += 2) {
            mark(lv.pairs[k]);
            mark(lv.pairs[k + 1]);
            if (lv.pairs[k] >= lv.pairs[k + 1] || signs.at(lv.pairs[k]) + signs.at(lv.pairs[k + 1]) != 0)
                rep.pair_permutations = false;
        }
        // Consecutive windows of one slot must keep the subsequence increasing.
        for (std::uint64_t w = 1; w < lv.windows; ++w)
            for (std::uint64_t l = 0; l < lv.count; ++l)
                if (lv.pairs[2 * (w * lv.count + l)] <= lv.pairs[2 * ((w - 1) * lv.count + l) + 1])
                    rep.pair_permutations = false;
    }
    for (auto n : d.residual) mark(n);
    for (std::uint64_t n = 1; n <= d.N; ++n)
        if (!seen[n]) rep.partition = false;

    const auto& last = d.levels.back();
    std::vector<std::uint64_t> per_window(last.windows, 0);
    for (auto n : d.residual) ++per_window[(n - 1) / last.window];
    for (auto c : per_window)
        if (c != last.residual_per_window) rep.residual_cardinalities = false;
    return rep;
}

/// The lower bounds on ind(b_1^{(i,l)}) for i > 5:
///   first:      ind >= floor(l / r_{i-3}) Q_{i-3}
///   second:     ind >= count_{i-1}
///   simplified: ind >= q_{i-3} l / (16B)
struct IndexBoundCheck {
    bool first = false;
    bool second = false;
    bool simplified = false;
    bool all() const { return first && second && simplified; }
};

inline IndexBoundCheck check_index_bounds(const ParitySequence& ps, std::size_t i, std::uint64_t l, std::uint64_t ind) {
    if (i <= 5) throw std::invalid_argument("index bounds are stated for levels i > 5");
    if (i > ps.depth()) throw std::invalid_argument("level beyond the hierarchy");
    const BigInt L(static_cast<unsigned long>(l));
    const BigInt I(static_cast<unsigned long>(ind));
    IndexBoundCheck c;
    c.first = I >= BigInt(L / ps.r(i - 3)) * ps.Q(i - 3);
    c.second = I >= ps.count(i - 1);
    c.simplified = I * 16 * static_cast<unsigned long>(ps.B) >= ps.q_at(i - 3) * L;
    return c;
}

inline IndexBoundCheck check_index_bounds(const ParitySequence& ps, const NearAlternatingSeq& seq) {
    if (seq.indices.empty()) throw std::invalid_argument("empty subsequence");
    return check_index_bounds(ps, seq.level, seq.slot, seq.indices.front());
}

/// Violations of each bound over every subsequence of levels 6..depth.
struct IndexBoundSummary {
    std::uint64_t checked = 0;
    std::uint64_t first_violations = 0;
    std::uint64_t second_violations = 0;
    std::uint64_t simplified_violations = 0;
    std::uint64_t violations() const { return first_violations + second_violations + simplified_violations; }
};

inline IndexBoundSummary check_all_index_bounds(const Decomposition& d) {
    IndexBoundSummary s;
    for (const auto& lv : d.levels) {
        if (lv.i <= 5) continue;
        for (std::uint64_t l = 1; l <= lv.count; ++l) {
            const auto c = check_index_bounds(d.parity, lv.i, l, lv.first_index(l - 1));
            ++s.checked;
            s.first_violations += !c.first;
            s.second_violations += !c.second;
            s.simplified_violations += !c.simplified;
        }
    }
    return s;
}

/// D^{(i)}, a bound on every weighted window sum of level i under weights 1/n.
/// For i >= 4 this is 2 sum_{l <= count_i} 16B/(q_{i-3} l) = (32B/q_{i-3}) H_{count_i};
/// below that it is 2 sum_l 1/ind_l over the extracted first indices.
struct LevelBound {
    std::size_t i = 0;
    std::optional<Rational> exact;
    Interval value;
    bool from_indices = false;
};

inline constexpr std::uint64_t kExactLevelBoundMax = 2000;

inline LevelBound level_bound(const ParitySequence& ps, std::size_t i, const DecompositionLevel* level = nullptr) {
    if (i < 1 || i > ps.depth()) throw std::invalid_argument("level out of range");
    LevelBound b;
    b.i = i;
    if (i >= 4) {
        const BigInt& count = ps.count(i);
        const Rational factor(BigInt(32 * static_cast<unsigned long>(ps.B)), ps.q_at(i - 3));
        if (count == 0) {
            b.exact = Rational(0);
        } else if (count <= kExactLevelBoundMax) {
            b.exact = factor * harmonic_exact(count.get_ui());
        }
        if (b.exact) {
            b.value = Interval::from_rational(*b.exact);
        } else {
            b.value = Interval::from_rational(factor) * harmonic_tight(count);
        }
        return b;
    }
    if (level == nullptr || level->i != i) throw std::invalid_argument("levels below 4 need the extracted level");
    b.from_indices = true;
    Rational sum = 0;
    for (std::uint64_t l = 0; l < level->count; ++l) sum += Rational(2, static_cast<unsigned long>(level->first_index(l)));
    b.exact = sum;
    b.value = Interval::from_rational(sum);
    return b;
}

/// Upper bound on max over windows [a, b] of |sum_{n in [a,b], n in level} c_n/n|,
/// i.e. max minus min of the level's prefix sums, computed with outward rounding.
inline Interval empirical_window_max(const DecompositionLevel& level, const SignSequence& signs) {
    std::vector<std::uint32_t> idx(level.pairs);
    std::sort(idx.begin(), idx.end());
    Interval prefix;
    Interval hi, lo;  // running max of upper ends and min of lower ends, both start at 0
    for (auto n : idx) {
        prefix.add_signed_reciprocal(signs.at(n), n);
        if (mpfr_greater_p(prefix.hi().get(), hi.hi().get())) hi = prefix;
        if (mpfr_less_p(prefix.lo().get(), lo.lo().get())) lo = prefix;
    }
    return hi - lo;
}

/// Count constant: max over i of count_i / (Q_{i-2} q_i), i = 2..depth.
inline Rational count_constant(const ParitySequence& ps) {
    Rational best = 0;
    for (std::size_t i = 2; i <= ps.depth(); ++i) {
        const Rational ratio(ps.count(i), ps.Q(i - 2) * ps.q_at(i));
        if (ratio > best) best = ratio;
    }
    return best;
}

/// Finite-depth sum of the level bounds and the growth diagnostic sum_k k log(q_k)/q_{k-3}.
struct RecombinedBound {
    Interval total;
    std::vector<Interval> partials;  // after each level
    double diagnostic = 0;
};

inline RecombinedBound recombine_bound(const std::vector<LevelBound>& bounds, const ParitySequence& ps) {
    if (bounds.empty()) throw std::invalid_argument("need at least one level");
    RecombinedBound out;
    for (const auto& b : bounds) {
        out.total += b.value;
        out.partials.push_back(out.total);
    }
    for (std::size_t k = 4; k <= ps.depth(); ++k)
        out.diagnostic += static_cast<double>(k) * log_of(ps.q_at(k)) / to_double(Rational(ps.q_at(k - 3)));
    return out;
}

}  // namespace eht
