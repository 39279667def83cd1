// ehtcli: constructions, traces, scans, decomposition audits, discrepancy tables and
// invariant checks from the command line.
//
// Exit status: 0 success, 1 invariant failure, 2 configuration error, 3 digit exhaustion.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "eht/all.hpp"

namespace {

using eht::BigInt;
using eht::Rational;
using json = eht::io::json;

enum Exit : int { kOk = 0, kInvariant = 1, kConfig = 2, kDigits = 3 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON when the text starts with '[' or '{', otherwise a file path.
json json_arg(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    const std::string body = first != std::string::npos && (text[first] == '[' || text[first] == '{') ? text : slurp(text);
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

eht::Rotation parse_alpha(const std::string& text) {
    if (text == "golden") return eht::Rotation::irrational(eht::presets::golden(64));
    if (text == "sqrt2") return eht::Rotation::irrational(eht::presets::sqrt2(64));
    if (text == "thm3") return eht::Rotation::irrational(eht::presets::thm3(6));
    if (text == "relaxed-divergent") return eht::Rotation::irrational(eht::presets::relaxed_divergent(4));
    if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-') &&
        !std::filesystem::exists(text)) {
        try {
            return eht::Rotation::rational(eht::parse_rational(text));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("alpha: " + std::string(e.what()));
        }
    }
    try {
        return eht::Rotation::irrational(eht::io::cf_from_json(json_arg(text), "cf"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("alpha: " + std::string(e.what()));
    }
}

eht::IntervalUnion parse_union(const std::string& text) {
    if (text == "halfcircle") return eht::IntervalUnion::half_circle();
    try {
        return eht::io::union_from_json(json_arg(text));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("U: " + std::string(e.what()));
    }
}

eht::UnitPoint parse_point(const std::string& text) {
    try {
        return eht::UnitPoint(eht::parse_rational(text));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("x: " + std::string(e.what()));
    }
}

eht::SumMode parse_mode(const std::string& mode) {
    if (mode == "exact") return eht::SumMode::Exact;
    if (mode == "certified") return eht::SumMode::Certified;
    if (mode == "auto") return eht::SumMode::Automatic;
    throw ConfigError("mode must be exact, certified or auto");
}

eht::WeightScheme parse_weights(const std::string& text) {
    if (text == "harmonic") return eht::WeightScheme::harmonic();
    const std::string prefix = "harmonic+";
    if (text.rfind(prefix, 0) == 0) {
        try {
            return eht::WeightScheme::harmonic(eht::parse_bigint(text.substr(prefix.size())));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("weights: " + std::string(e.what()));
        }
    }
    throw ConfigError("weights must be harmonic or harmonic+K");
}

/// Writes to --out when given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

json with_hash(json report, const json& config) {
    report["config"] = config;
    report["config_hash"] = eht::io::config_hash(config);
    return report;
}

json certificate_json(const eht::NStarCertificate& c) {
    return {{"L", eht::to_string(c.L)},
            {"kappa", c.kappa.get_str()},
            {"N1", c.N1.get_str()},
            {"A", eht::to_string(c.A)},
            {"E", eht::to_string(c.E)},
            {"E_exact", c.E_exact},
            {"threshold", eht::to_string(c.threshold)},
            {"N2", c.N2.get_str()},
            {"N2_exact", c.N2_exact},
            {"n_sound", c.n_sound.get_str()},
            {"n_sound_exact", c.n_sound_exact},
            {"Nstar", c.Nstar.get_str()}};
}

std::vector<BigInt> parse_prefix(const std::string& text) {
    if (text.empty()) return {};
    const json j = json_arg(text);
    if (!j.is_array()) throw ConfigError("prefix must be a JSON array");
    try {
        return eht::io::cf_from_json(j).known_prefix();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("prefix: " + std::string(e.what()));
    }
}

struct Options {
    std::string alpha = "golden";
    std::string U = "halfcircle";
    std::string x = "0";
    std::string out;
    std::string mode = "auto";
    std::string weights = "harmonic";
    std::int64_t N = 1000;
    std::int64_t n_lo = 1;
    std::int64_t n_hi = 1000;
    std::string theta = "1/5";
    std::size_t depth = 3;
    std::size_t levels = 3;
    std::size_t B = 1;
    std::string A = "1/5";
    std::string growth = "100";
    std::string prefix;
    std::string hierarchy;
    std::string v = "3";
    std::string construct_mode = "exact";
    std::vector<std::int64_t> checkpoints;
    bool align_prefix = false;
};

int run_construct_divergent(const Options& o) {
    eht::DivergentBuildConfig cfg;
    if (o.construct_mode == "exact")
        cfg.mode = eht::DivergentBuildConfig::Mode::Exact;
    else if (o.construct_mode == "relaxed")
        cfg.mode = eht::DivergentBuildConfig::Mode::Relaxed;
    else
        throw ConfigError("mode must be exact or relaxed");
    cfg.B = o.B;
    cfg.depth = o.depth;
    cfg.A_relaxed = eht::parse_rational(o.A);
    cfg.growth_factor = eht::parse_bigint(o.growth);
    cfg.prefix = parse_prefix(o.prefix);
    cfg.align_prefix = o.align_prefix;
    const json config{{"command", "construct divergent"}, {"mode", o.construct_mode}, {"B", o.B},
                      {"depth", o.depth},  {"A", o.A},  {"growth", o.growth},
                      {"prefix", o.prefix}, {"align_prefix", o.align_prefix}};

    const auto built = eht::build_divergent(cfg);
    json levels = json::array();
    bool ok = built.q_all_odd;
    for (const auto& lv : built.levels) {
        json e{{"n", lv.n},
               {"q_prev", lv.q_prev.get_str()},
               {"q_n", lv.q_n.get_str()},
               {"a_next", lv.a_next.get_str()},
               {"A", eht::to_string(lv.A)},
               {"certificate_satisfied", lv.certificate_satisfied}};
        if (lv.certificate) e["certificate"] = certificate_json(*lv.certificate);
        if (cfg.mode == eht::DivergentBuildConfig::Mode::Exact) ok = ok && lv.certificate_satisfied;
        levels.push_back(std::move(e));
    }
    json report{{"cf", eht::io::cf_to_json(built.alpha, o.depth)},
                {"mode", o.construct_mode},
                {"certified", cfg.mode == eht::DivergentBuildConfig::Mode::Exact},
                {"prefix_length", built.prefix_length},
                {"q_all_odd", built.q_all_odd},
                {"levels", levels},
                {"passed", ok}};
    emit(o.out, with_hash(report, config).dump(2) + "\n");
    if (!ok) std::cerr << "invariant failure: construct.divergent\n";
    return ok ? kOk : kInvariant;
}

int run_construct_liouville(const Options& o) {
    auto prefix = parse_prefix(o.prefix);
    if (prefix.empty()) prefix = {BigInt(1)};
    const json config{{"command", "construct liouville"}, {"prefix", o.prefix}, {"depth", o.depth}, {"v", o.v}};
    if (o.depth < prefix.size()) throw ConfigError("depth must be at least the prefix length");
    const auto cf = eht::build_liouville_convergent(prefix, o.depth);
    const auto growth = eht::verify_growth_bounds(cf, o.depth);
    const auto witnesses = eht::verify_liouville(cf, eht::parse_rational(o.v), o.depth);

    // The growth sandwich follows from the digit rule only past the prefix.
    bool ok = true;
    json checks = json::array();
    for (const auto& c : growth.checks) {
        checks.push_back({{"k", c.k}, {"lower", c.lower}, {"upper", c.upper}});
        if (c.k >= prefix.size()) ok = ok && c.lower && c.upper;
    }
    json wit = json::array();
    for (const auto& w : witnesses)
        wit.push_back({{"k", w.k}, {"q_k", w.q_k.get_str()}, {"gap", eht::to_string(w.gap)},
                       {"bound_digits", eht::to_string(w.bound).size()}});
    json report{{"cf", eht::io::cf_to_json(cf, o.depth)},
                {"growth_checks", checks},
                {"summability_terms", growth.terms},
                {"liouville_witnesses", wit},
                {"passed", ok}};
    emit(o.out, with_hash(report, config).dump(2) + "\n");
    if (!ok) std::cerr << "invariant failure: construct.liouville.growth\n";
    return ok ? kOk : kInvariant;
}

int run_trace(const Options& o) {
    if (o.N < 1) throw ConfigError("N must be >= 1");
    const auto alpha = parse_alpha(o.alpha);
    const auto trace = eht::weighted_partial_sums(alpha, parse_point(o.x), parse_union(o.U), parse_weights(o.weights),
                                                  o.N, parse_mode(o.mode));
    std::ostringstream os;
    eht::io::write_trace_csv(os, trace);
    emit(o.out, os.str());
    return kOk;
}

int run_scan(const Options& o) {
    if (o.n_lo < 1 || o.n_hi < o.n_lo) throw ConfigError("need 1 <= n-lo <= n-hi");
    const json config{{"command", "scan"}, {"alpha", o.alpha}, {"U", o.U}, {"x", o.x}, {"n_lo", o.n_lo},
                      {"n_hi", o.n_hi}, {"theta", o.theta}, {"weights", o.weights}, {"mode", o.mode}};
    const auto rep = eht::cauchy_gap_scan(parse_alpha(o.alpha), parse_point(o.x), parse_union(o.U),
                                          parse_weights(o.weights), o.n_lo, o.n_hi, eht::parse_rational(o.theta),
                                          parse_mode(o.mode));
    json wit = json::array();
    for (const auto& w : rep.witnesses) {
        json e{{"n1", w.n1}, {"n2", w.n2}, {"value", eht::io::interval_json(w.value)}};
        if (w.exact) e["exact"] = eht::to_string(*w.exact);
        wit.push_back(std::move(e));
    }
    json report{{"witnesses", wit},
                {"spread", eht::io::interval_json(rep.spread)},
                {"spread_n1", rep.spread_n1},
                {"spread_n2", rep.spread_n2}};
    emit(o.out, with_hash(report, config).dump(2) + "\n");
    return kOk;
}

int run_decompose(const Options& o) {
    const json config{{"command", "decompose"}, {"alpha", o.alpha},   {"U", o.U},
                      {"x", o.x},              {"levels", o.levels}, {"N", o.N},
                      {"hierarchy", o.hierarchy}};
    const auto alpha = parse_alpha(o.alpha);
    const auto U = parse_union(o.U);
    const std::size_t B = U.count();
    eht::ShiftedHierarchy h;
    if (!o.hierarchy.empty()) {
        const json j = json_arg(o.hierarchy);
        if (!j.is_array()) throw ConfigError("hierarchy must be a JSON array");
        for (const auto& v : j) h.q.push_back(eht::parse_bigint(v.is_string() ? v.get<std::string>() : v.dump()));
    } else {
        if (alpha.is_rational()) throw ConfigError("rational alpha needs an explicit --hierarchy");
        h = eht::shifted_hierarchy(alpha.cf(), B, o.levels);
    }
    if (h.q.size() < o.levels) throw ConfigError("hierarchy shorter than levels");
    eht::ParitySequence ps;
    try {
        ps = eht::parity_sequence(h.q, B, o.levels);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const BigInt N = o.N > 0 ? BigInt(static_cast<long>(o.N)) : ps.Q(o.levels);
    if (N % ps.Q(o.levels) != 0) throw ConfigError("N must be a multiple of Q_levels = " + ps.Q(o.levels).get_str());
    if (N > BigInt(static_cast<long>(eht::kMaxBlockOrbit))) throw ConfigError("N too large: " + N.get_str());

    const auto signs = eht::orbit_signs(alpha, parse_point(o.x), U, 1, N.get_si());
    const auto d = eht::decompose(signs, h.q, B, o.levels, h.shift);
    std::vector<eht::io::LevelAudit> audits;
    std::vector<eht::LevelBound> bounds;
    bool ok = true;
    for (const auto& lv : d.levels) {
        audits.push_back(eht::io::audit_level(d, lv, signs));
        bounds.push_back(audits.back().bound);
        ok = ok && audits.back().counts_match && audits.back().within_bound;
    }
    const auto partition = eht::audit_partition(d, signs);
    ok = ok && partition.partition && partition.pair_permutations && partition.residual_cardinalities;
    const auto recombined = eht::recombine_bound(bounds, d.parity);

    json parity{{"xi", d.parity.xi_values}, {"Q", json::array()}, {"count", json::array()}};
    for (std::size_t i = 1; i <= o.levels; ++i) {
        parity["Q"].push_back(d.parity.Q(i).get_str());
        parity["count"].push_back(d.parity.count(i).get_str());
    }
    json hierarchy = json::array();
    for (const auto& q : h.q) hierarchy.push_back(q.get_str());
    json report{{"B", B},
                {"shift", h.shift},
                {"hierarchy", hierarchy},
                {"N", N.get_str()},
                {"parity", parity},
                {"levels", eht::io::audit_json(audits)},
                {"partition", {{"partition", partition.partition},
                               {"pair_permutations", partition.pair_permutations},
                               {"residual_cardinalities", partition.residual_cardinalities}}},
                {"count_constant", eht::to_string(eht::count_constant(d.parity))},
                {"sum_D", eht::io::interval_json(recombined.total)},
                {"growth_diagnostic", recombined.diagnostic}};
    if (o.levels > 5) {
        const auto ib = eht::check_all_index_bounds(d);
        report["index_bounds"] = {{"checked", ib.checked},
                                  {"first_violations", ib.first_violations},
                                  {"second_violations", ib.second_violations},
                                  {"simplified_violations", ib.simplified_violations}};
        ok = ok && ib.violations() == 0;
    }
    report["passed"] = ok;
    emit(o.out, with_hash(report, config).dump(2) + "\n");
    if (!ok) std::cerr << "invariant failure: decompose\n";
    return ok ? kOk : kInvariant;
}

int run_discrepancy(const Options& o) {
    std::vector<std::int64_t> points = o.checkpoints;
    if (points.empty()) points.push_back(o.N);
    for (auto N : points)
        if (N < 1) throw ConfigError("N must be >= 1");
    const auto alpha = parse_alpha(o.alpha);
    const auto x = parse_point(o.x);
    std::vector<eht::DiscrepancyReport> rows;
    for (auto N : points) rows.push_back(eht::kronecker_discrepancy(alpha, x, N));
    std::ostringstream os;
    eht::io::write_discrepancy_csv(os, rows);
    emit(o.out, os.str());
    return kOk;
}

struct Check {
    std::string id;
    bool passed;
    std::string detail;
};

int run_verify(const Options& o) {
    if (o.N < 2) throw ConfigError("N must be >= 2");
    const json config{{"command", "verify"}, {"alpha", o.alpha}, {"U", o.U}, {"x", o.x}, {"N", o.N}};
    const auto alpha = parse_alpha(o.alpha);
    const auto U = parse_union(o.U);
    const auto x = parse_point(o.x);
    const long B = static_cast<long>(U.count());
    std::vector<Check> checks;
    const auto signs = eht::orbit_signs(alpha, x, U, 1, o.N);
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(o.N) + 1, 0);
    for (std::int64_t n = 1; n <= o.N; ++n) prefix[static_cast<std::size_t>(n)] = prefix[static_cast<std::size_t>(n - 1)] + signs.at(n);

    if (!alpha.is_rational()) {
        const auto& cf = alpha.cf();
        bool det = true;
        std::size_t K = 1;
        while (cf.q(K) <= BigInt(static_cast<long>(o.N))) ++K;
        for (std::size_t k = 1; k <= K; ++k) {
            const BigInt d = cf.p(k) * cf.q(k - 1) - cf.p(k - 1) * cf.q(k);
            det = det && abs(d) == 1;
        }
        checks.push_back({"cf.determinant", det, "k <= " + std::to_string(K)});

        // Every window of length q_k inside [1, N]: |sum| < 4B, and odd when q_k is odd.
        bool dk = true, parity = true;
        std::int64_t windows = 0;
        for (std::size_t k = 1; cf.q(k) <= BigInt(static_cast<long>(o.N)); ++k) {
            const std::int64_t len = cf.q(k).get_si();
            if (k > 1 && cf.q(k) == cf.q(k - 1)) continue;
            for (std::int64_t a = 1; a + len - 1 <= o.N; ++a) {
                const std::int64_t s = prefix[static_cast<std::size_t>(a + len - 1)] - prefix[static_cast<std::size_t>(a - 1)];
                dk = dk && std::llabs(s) < 4 * B;
                if (len % 2 == 1) parity = parity && s % 2 != 0;
                ++windows;
            }
        }
        checks.push_back({"denjoy_koksma.windows", dk, std::to_string(windows) + " windows"});
        checks.push_back({"parity.odd_windows", parity, "odd-length windows have odd sums"});
    } else {
        // s over whole periods is a multiple of the one-period sum.
        const std::int64_t q = alpha.exact().get_den().get_si();
        bool periodic = true;
        if (q <= o.N)
            for (std::int64_t k = 1; k * q <= o.N; ++k)
                periodic = periodic && prefix[static_cast<std::size_t>(k * q)] == k * prefix[static_cast<std::size_t>(q)];
        checks.push_back({"orbit.period", periodic, "period " + std::to_string(q)});
    }

    const auto parts = eht::eht_via_parts(alpha, x, U, o.N);
    checks.push_back({"trace.summation_by_parts", parts.identity_holds, parts.exact ? "exact" : "enclosures overlap"});

    std::vector<std::int64_t> cps;
    for (std::int64_t c = 1; c < o.N; c *= 10) cps.push_back(c);
    cps.push_back(o.N);
    bool growth = true, bounds = true;
    for (const auto& row : eht::sn_growth(alpha, x, U, cps)) {
        growth = growth && row.ok;
        bounds = bounds && row.discrepancy.hi >= Rational(1, 2 * row.N) && row.discrepancy.lo <= 1;
    }
    checks.push_back({"discrepancy.sn_bound", growth, "|s_N| <= 2B N D_N at " + std::to_string(cps.size()) + " checkpoints"});
    checks.push_back({"discrepancy.range", bounds, "1/(2N) <= D_N <= 1"});

    bool all = true;
    json list = json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        list.push_back({{"id", c.id}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed) std::cerr << "invariant failure: " << c.id << "\n";
    }
    json report{{"checks", list}, {"passed", all}};
    emit(o.out, with_hash(report, config).dump(2) + "\n");
    return all ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted ergodic sums over circle rotations"};
    app.require_subcommand(1);
    Options o;

    auto add_orbit = [&o](CLI::App* cmd) {
        cmd->add_option("--alpha", o.alpha, "golden, sqrt2, thm3, relaxed-divergent, p/q, or a CF JSON array/file");
        cmd->add_option("--U", o.U, "halfcircle or interval-union JSON/file");
        cmd->add_option("--x", o.x, "starting point in [0,1)");
    };

    auto* construct = app.add_subcommand("construct", "Build a rotation number");
    construct->require_subcommand(1);
    auto* divergent = construct->add_subcommand("divergent", "Digits for which the weighted sum diverges");
    divergent->add_option("--mode", o.construct_mode, "exact or relaxed")->capture_default_str();
    divergent->add_option("--depth", o.depth)->capture_default_str();
    divergent->add_option("--B", o.B)->capture_default_str();
    divergent->add_option("--A", o.A, "drift constant in relaxed mode")->capture_default_str();
    divergent->add_option("--growth", o.growth, "digit floor in relaxed mode")->capture_default_str();
    divergent->add_option("--prefix", o.prefix, "initial digits as JSON");
    divergent->add_flag("--align-prefix", o.align_prefix, "append 1 when the prefix ends at an even q");
    divergent->add_option("--out", o.out);
    auto* liouville = construct->add_subcommand("liouville", "Fast-growth digits a_{k+1} = q_k^{k-1}");
    liouville->add_option("--prefix", o.prefix, "initial digits as JSON (default [1])");
    liouville->add_option("--depth", o.depth)->capture_default_str();
    liouville->add_option("--v", o.v, "exponent for the approximation witnesses")->capture_default_str();
    liouville->add_option("--out", o.out);

    auto* trace = app.add_subcommand("trace", "Weighted partial sums as CSV");
    add_orbit(trace);
    trace->add_option("--N", o.N)->capture_default_str();
    trace->add_option("--weights", o.weights, "harmonic or harmonic+K")->capture_default_str();
    trace->add_option("--mode", o.mode, "exact, certified or auto")->capture_default_str();
    trace->add_option("--out", o.out);

    auto* scan = app.add_subcommand("scan", "Cauchy-gap witnesses");
    add_orbit(scan);
    scan->add_option("--n-lo", o.n_lo)->capture_default_str();
    scan->add_option("--n-hi", o.n_hi)->capture_default_str();
    scan->add_option("--theta", o.theta)->capture_default_str();
    scan->add_option("--weights", o.weights)->capture_default_str();
    scan->add_option("--mode", o.mode)->capture_default_str();
    scan->add_option("--out", o.out);

    auto* decompose = app.add_subcommand("decompose", "Near-alternating decomposition audit as JSON");
    add_orbit(decompose);
    decompose->add_option("--levels", o.levels)->capture_default_str();
    decompose->add_option("--N", o.N, "defaults to Q_levels");
    decompose->add_option("--hierarchy", o.hierarchy, "explicit q_1, q_2, ... as JSON");
    decompose->add_option("--out", o.out);

    auto* disc = app.add_subcommand("discrepancy", "Discrepancy of the orbit as CSV");
    add_orbit(disc);
    disc->add_option("--N", o.N)->capture_default_str();
    disc->add_option("--checkpoints", o.checkpoints, "several N")->delimiter(',');
    disc->add_option("--out", o.out);

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    add_orbit(verify);
    verify->add_option("--N", o.N)->capture_default_str();
    verify->add_option("--out", o.out);

    // Unset means "default to Q_levels" for decompose only.
    bool decompose_N_given = false;
    try {
        app.parse(argc, argv);
        decompose_N_given = decompose->count("--N") > 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*divergent) return run_construct_divergent(o);
        if (*liouville) return run_construct_liouville(o);
        if (*trace) return run_trace(o);
        if (*scan) return run_scan(o);
        if (*decompose) {
            if (!decompose_N_given) o.N = 0;
            return run_decompose(o);
        }
        if (*disc) return run_discrepancy(o);
        if (*verify) return run_verify(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const eht::DigitExhaustion& e) {
        std::cerr << "digit exhaustion: " << e.what() << " (required depth " << e.required_depth() << ")\n";
        return kDigits;
    } catch (const eht::InvariantViolation& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kInvariant;
    } catch (const eht::Infeasible& e) {
        std::cerr << "config error: infeasible: " << e.what() << "\n";
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    return kConfig;
}
