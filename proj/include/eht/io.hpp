#pragma once

// Serialization: continued fractions and interval unions as JSON, trace and discrepancy
// CSV, and a stable 64-bit hash of a canonical JSON config.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "eht/circle.hpp"
#include "eht/decomp.hpp"
#include "eht/discrepancy.hpp"
#include "eht/eht.hpp"

namespace eht::io {

using json = nlohmann::json;

/// ["1", "100", ...], the first depth digits.
inline json cf_to_json(const CFNumber& cf, std::size_t depth) {
    json out = json::array();
    for (const auto& d : cf.prefix(depth)) out.push_back(d.get_str());
    return out;
}

inline CFNumber cf_from_json(const json& j, std::string name = {}) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("continued fraction must be a nonempty array");
    std::vector<BigInt> digits;
    for (const auto& d : j) {
        if (d.is_string())
            digits.push_back(parse_bigint(d.get<std::string>()));
        else if (d.is_number_unsigned())
            digits.push_back(from_u64(d.get<std::uint64_t>()));
        else
            throw std::invalid_argument("continued-fraction digits must be decimal strings");
    }
    return CFNumber(std::move(digits), {}, std::move(name));
}

/// {"intervals": [["0", "1/2"], ...]}
inline json union_to_json(const IntervalUnion& U) {
    json arcs = json::array();
    for (const auto& a : U.arcs()) arcs.push_back({to_string(a.left), to_string(a.right)});
    return {{"intervals", arcs}};
}

inline IntervalUnion union_from_json(const json& j) {
    if (!j.is_object() || !j.contains("intervals") || !j["intervals"].is_array())
        throw std::invalid_argument("interval union needs an \"intervals\" array");
    std::vector<Arc> arcs;
    for (const auto& a : j["intervals"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
            throw std::invalid_argument("each interval is a pair of rational strings");
        arcs.push_back({parse_rational(a[0].get<std::string>()), parse_rational(a[1].get<std::string>())});
    }
    return IntervalUnion(std::move(arcs));
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Hash of the compact dump; json objects keep keys sorted, so equal configs hash equally.
inline std::string config_hash(const json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

/// Endpoints as decimal strings rounded outward.
inline std::pair<std::string, std::string> interval_strings(const Interval& v, int digits = 30) {
    char lo[160], hi[160];
    mpfr_snprintf(lo, sizeof lo, "%.*RDe", digits, v.lo().get());
    mpfr_snprintf(hi, sizeof hi, "%.*RUe", digits, v.hi().get());
    return {lo, hi};
}

/// n,c_n,s_n,S_N_num,S_N_den (exact) or n,c_n,s_n,S_N_lo,S_N_hi (certified).
inline void write_trace_csv(std::ostream& os, const PartialSumTrace& t) {
    os << (t.certified ? "n,c_n,s_n,S_N_lo,S_N_hi\n" : "n,c_n,s_n,S_N_num,S_N_den\n");
    for (std::int64_t n = 1; n <= t.size(); ++n) {
        os << n << ',' << t.c(n) << ',' << t.s(n) << ',';
        if (t.certified) {
            const auto [lo, hi] = interval_strings(t.S_enclosure(n));
            os << lo << ',' << hi << '\n';
        } else {
            const Rational& S = t.S(n);
            os << S.get_num().get_str() << ',' << S.get_den().get_str() << '\n';
        }
    }
}

/// N,D_N,witness_lo,witness_hi,witness_kind; D_N becomes D_N_lo,D_N_hi when enclosed.
inline void write_discrepancy_csv(std::ostream& os, const std::vector<DiscrepancyReport>& rows) {
    const bool exact = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.exact; });
    os << (exact ? "N,D_N" : "N,D_N_lo,D_N_hi") << ",witness_lo,witness_hi,witness_kind\n";
    for (const auto& r : rows) {
        os << r.N << ',';
        if (exact)
            os << to_string(r.D);
        else
            os << to_string(r.lo) << ',' << to_string(r.hi);
        os << ',' << to_string(r.witness_lo) << ',' << to_string(r.witness_hi) << ','
           << (r.witness_closed ? "closed" : "open") << '\n';
    }
}

inline json interval_json(const Interval& v) {
    const auto [lo, hi] = interval_strings(v);
    return {{"lo", lo}, {"hi", hi}};
}

/// One entry per level: counts against the formula, xi_i, Q_i, D^{(i)}, the empirical max
/// window sum and pass flags.
struct LevelAudit {
    std::size_t i = 0;
    std::uint64_t count = 0;
    BigInt formula_count;
    int xi = 0;
    BigInt Q;
    LevelBound bound;
    Interval empirical;
    bool counts_match = false;
    bool within_bound = false;
};

inline LevelAudit audit_level(const Decomposition& d, const DecompositionLevel& lv, const SignSequence& signs) {
    LevelAudit a;
    a.i = lv.i;
    a.count = lv.count;
    a.formula_count = d.parity.count(lv.i);
    a.xi = d.parity.xi(lv.i);
    a.Q = d.parity.Q(lv.i);
    a.bound = level_bound(d.parity, lv.i, &lv);
    a.empirical = empirical_window_max(lv, signs);
    a.counts_match = BigInt(static_cast<unsigned long>(lv.count)) == a.formula_count;
    a.within_bound = a.bound.value.certainly_greater(a.empirical) ||
                     (a.bound.exact && a.empirical.certainly_at_most(*a.bound.exact));
    return a;
}

inline json audit_json(const std::vector<LevelAudit>& levels) {
    json out = json::array();
    for (const auto& a : levels) {
        json e{{"level", a.i},
               {"count", a.count},
               {"formula_count", a.formula_count.get_str()},
               {"xi", a.xi},
               {"Q", a.Q.get_str()},
               {"max_window_sum", interval_json(a.empirical)},
               {"counts_match", a.counts_match},
               {"within_bound", a.within_bound}};
        // Exact harmonic numbers grow long digit strings; past a screenful the enclosure is more useful.
        const bool short_exact = a.bound.exact && to_string(*a.bound.exact).size() <= 120;
        e["D"] = short_exact ? json(to_string(*a.bound.exact)) : interval_json(a.bound.value);
        e["D_source"] = a.bound.from_indices ? "indices" : "harmonic";
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace eht::io
