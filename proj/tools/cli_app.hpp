#pragma once

// Command-line front end: count, bounds, verify, glue-demo.
//
// Exit codes: 0 success, 1 usage or parse error, 2 budget exceeded or
// sampling exhausted, 3 a verification check failed.

#include "symsft/symsft.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace symsft::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kBudget = 2, kVerifyFailed = 3 };

enum class Format { Human, Json, Csv };

struct RunConfig {
    std::string model_path;
    std::string builtin;
    int dim = 2;
    std::string backend = "auto";
    std::string format = "human";
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    std::uint64_t node_budget = 2'000'000'000ULL;
    std::uint64_t memory_budget = 2ULL << 30;
    std::string log_base = "e";

    int n = 0;
    int n_max = 0;
    int samples = 200;
};

inline SftModel load_model(const RunConfig& cfg) {
    if (cfg.model_path.empty() == cfg.builtin.empty())
        throw ModelError("give exactly one of --model PATH or --builtin NAME[:PARAM]");
    if (!cfg.builtin.empty()) return builtin_model(cfg.builtin, cfg.dim);
    std::ifstream in(cfg.model_path, std::ios::binary);
    if (!in) throw ModelError("cannot open model file " + cfg.model_path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_model(text.str());
}

inline CountOptions count_options(const RunConfig& cfg) {
    CountOptions o;
    o.node_budget = cfg.node_budget;
    o.memory_budget = cfg.memory_budget;
    o.jobs = cfg.jobs;
    return o;
}

inline Format parse_format(const std::string& f) {
    if (f == "human") return Format::Human;
    if (f == "json") return Format::Json;
    if (f == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format " + f);
}

inline LogBase parse_log_base(const std::string& b) { return b == "2" ? LogBase::Two : LogBase::E; }

// ---------------------------------------------------------------------------

inline int cmd_count(const RunConfig& cfg, std::ostream& out) {
    const SftModel model = load_model(cfg);
    const Backend backend = parse_backend(cfg.backend);
    const CountOptions opts = count_options(cfg);
    int lo = cfg.n;
    int hi = cfg.n;
    if (cfg.n_max > 0) {
        lo = cfg.n > 0 ? cfg.n : 1;
        hi = cfg.n_max;
    }
    if (lo < 1 || hi < lo) throw CLI::ValidationError("count", "need --n N or --n-max N (N >= 1)");

    const Format format = parse_format(cfg.format);
    nlohmann::json rows = nlohmann::json::array();
    if (format == Format::Csv) out << "n,C_n\n";
    for (int n = lo; n <= hi; ++n) {
        const BigCount c = count_cube(model, n, backend, opts);
        switch (format) {
            case Format::Human:
                out << "C_" << n << " = " << to_decimal(c) << '\n';
                break;
            case Format::Csv:
                out << n << ',' << to_decimal(c) << '\n';
                break;
            case Format::Json:
                rows.push_back({{"n", n}, {"C_n", to_decimal(c)}});
                break;
        }
    }
    if (format == Format::Json) out << nlohmann::json{{"d", model.dimension()}, {"counts", rows}}.dump(2) << '\n';
    return kOk;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
    const SftModel model = load_model(cfg);
    const int n_max = cfg.n_max > 0 ? cfg.n_max : cfg.n;
    if (n_max < 1) throw CLI::ValidationError("bounds", "need --n-max N (N >= 1)");
    ReportOptions ro;
    ro.backend = parse_backend(cfg.backend);
    ro.count = count_options(cfg);
    const ConvergenceReport report = build_report(model, n_max, ro);
    const LogBase base = parse_log_base(cfg.log_base);
    switch (parse_format(cfg.format)) {
        case Format::Human:
            out << report_to_table(report, base);
            break;
        case Format::Json:
            out << report_to_json(report, base).dump(2) << '\n';
            break;
        case Format::Csv:
            out << report_to_csv(report, base);
            break;
    }
    return kOk;
}

namespace detail {

inline const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const SftModel model = load_model(cfg);
    const Backend backend = parse_backend(cfg.backend);
    const CountOptions opts = count_options(cfg);
    const int n = cfg.n > 0 ? cfg.n : 2;
    const int d = model.dimension();
    bool all = true;
    auto report = [&](bool ok) {
        all = all && ok;
        return detail::verdict(ok);
    };

    const KeyInequality key = verify_key_inequality(model, n, backend, opts);
    out << "key: C_" << 2 * n - 1 << " = " << to_decimal(key.lhs) << " >= sum_s (C_" << n << "^(s))^" << (1 << d)
        << " = " << to_decimal(key.rhs) << "  (" << to_decimal(key.lhs) << " >= " << to_decimal(key.rhs) << ") "
        << report(key.holds) << '\n';

    const BigCount c_n1 = count_cube(model, n + 1, backend, opts);
    const BigCount c_2n1 = count_cube(model, 2 * n + 1, backend, opts);
    const PowerMeanCheck pm = power_mean_check(model, n, c_n1, c_2n1);
    out << "power-mean: C_" << 2 * n + 1 << " * " << model.sigma_size() << "^" << to_decimal(pm.exponent) << " = "
        << to_decimal(pm.lhs) << " >= C_" << n + 1 << "^" << (1 << d) << " = " << to_decimal(pm.rhs) << " "
        << report(pm.holds) << '\n';

    const DoublingCheck dc = doubling_check(model, n, c_n1, c_2n1);
    out << std::setprecision(12) << "doubling: ln v_" << 2 * n << " = " << static_cast<double>(dc.ln_v_2n)
        << " >= ln v_" << n << " = " << static_cast<double>(dc.ln_v_n) << " (tolerance 1e-12"
        << (dc.exact ? ", exact" : "") << ") " << report(dc.holds) << '\n';

    bool recurrence = true;
    for (int dd = 1; dd <= 6; ++dd)
        for (int nn = 1; nn <= 64; ++nn) recurrence = recurrence && verify_qd_recurrence(dd, nn);
    out << "recurrence: q_d(2n) + (2^d-1)((n+1)^d-n^d) = 2^d q_d(n) for d <= 6, n <= 64 " << report(recurrence)
        << '\n';

    if (n >= 2) {
        Rng rng(cfg.seed);
        int glued_ok = 0, faces_ok = 0, wrap_ok = 0, tiling_ok = 0, extend_ok = 0;
        const std::size_t blocks = std::size_t{1} << d;
        for (int s = 0; s < cfg.samples; ++s) {
            const std::vector<CubePattern> inputs = sample_same_state(model, n, blocks, rng);
            CubePattern q = glue(model, inputs);
            glued_ok += is_locally_admissible(model, q) ? 1 : 0;
            faces_ok += faces_coincide(glue_copies(model, inputs[0])) ? 1 : 0;
            // The wrap condition is a property of the glued copies of one pattern.
            const PeriodicCore core = periodic_core(model, glue_copies(model, inputs[0]));
            wrap_ok += core.wrap_admissible ? 1 : 0;
            tiling_ok += is_locally_admissible(model, tile(core.core, 2)) ? 1 : 0;
            const CubePattern ext = extend_to_plus_one(model, inputs[0]);
            extend_ok += (is_locally_admissible(model, ext) && restrict_to(ext, n) == inputs[0]) ? 1 : 0;
        }
        const int total = cfg.samples;
        out << "glue: seed " << cfg.seed << ", " << total << " samples, n = " << n << ": admissible " << glued_ok
            << "/" << total << ", faces " << faces_ok << "/" << total << ", wrap " << wrap_ok << "/" << total
            << ", tiling " << tiling_ok << "/" << total << ", extension " << extend_ok << "/" << total << " "
            << report(glued_ok == total && faces_ok == total && wrap_ok == total && tiling_ok == total &&
                      extend_ok == total)
            << '\n';
    } else {
        out << "glue: skipped (needs n >= 2)\n";
    }
    out << (all ? "all checks PASS" : "some checks FAILED") << '\n';
    return all ? kOk : kVerifyFailed;
}

inline int cmd_glue_demo(const RunConfig& cfg, std::ostream& out) {
    const SftModel model = load_model(cfg);
    const int d = model.dimension();
    if (d != 2 && d != 3) throw CLI::ValidationError("glue-demo", "supports d = 2 or d = 3");
    const int n = cfg.n > 0 ? cfg.n : 2;
    if (n < 2) throw CLI::ValidationError("glue-demo", "needs n >= 2");
    Rng rng(cfg.seed);
    const std::vector<CubePattern> inputs = sample_same_state(model, n, std::size_t{1} << d, rng);
    const Alphabet& a = model.alphabet();
    for (std::size_t t = 0; t < inputs.size(); ++t) out << "# P_" << t << '\n' << format_pattern(inputs[t], a);
    const CubePattern q = glue(model, inputs);
    out << "# glued (side " << q.side() << ")\n" << format_pattern(q, a);
    const PeriodicCore core = periodic_core(model, glue_copies(model, inputs[0]));
    out << "# periodic core of the glued copies of P_0 (side " << core.core.side() << ")\n"
        << format_pattern(core.core, a);
    const bool admissible = is_locally_admissible(model, q);
    const bool tiling = is_locally_admissible(model, tile(core.core, 2));
    out << "admissible: " << (admissible ? "yes" : "no") << ", wrap: " << (core.wrap_admissible ? "yes" : "no")
        << ", tiling: " << (tiling ? "yes" : "no") << '\n';
    return admissible && core.wrap_admissible && tiling ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified entropy bounds for symmetric nearest-neighbor subshifts"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* model_opt = app.add_option("--model", cfg.model_path, "Model file (JSON)");
    auto* builtin_opt = app.add_option("--builtin", cfg.builtin, "Built-in model: hard-square | coloring:q");
    model_opt->excludes(builtin_opt);
    app.add_option("--dim", cfg.dim, "Dimension for --builtin")->check(CLI::Range(1, 16));
    app.add_option("--backend", cfg.backend, "Counting backend")->check(CLI::IsMember({"auto", "dfs", "transfer"}));
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
    app.add_option("--seed", cfg.seed, "Random seed for sampled constructions");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--node-budget", cfg.node_budget, "DFS node budget")->check(CLI::PositiveNumber);
    app.add_option("--memory-budget", cfg.memory_budget, "Transfer table budget in bytes")->check(CLI::PositiveNumber);
    app.add_option("--log-base", cfg.log_base, "Logarithm base for reported bounds")->check(CLI::IsMember({"e", "2"}));

    auto* count = app.add_subcommand("count", "Exact counts C_n of locally admissible cube patterns");
    count->add_option("--n", cfg.n, "Cube side (or first side with --n-max)");
    count->add_option("--n-max", cfg.n_max, "Last cube side");
    auto* bounds = app.add_subcommand("bounds", "Upper and lower entropy bounds for n = 1..n_max");
    bounds->add_option("--n-max", cfg.n_max, "Last n")->required();
    auto* verify = app.add_subcommand("verify", "Check the counting inequalities and gluing constructions");
    verify->add_option("--n", cfg.n, "Pattern side for the checks")->check(CLI::PositiveNumber);
    verify->add_option("--samples", cfg.samples, "Random gluing samples")->check(CLI::NonNegativeNumber);
    auto* demo = app.add_subcommand("glue-demo", "Print one sampled reflection-gluing construction");
    demo->add_option("--n", cfg.n, "Input pattern side (>= 2)");
    for (auto* sub : {count, bounds, verify, demo}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (count->parsed()) return cmd_count(cfg, out);
        if (bounds->parsed()) return cmd_bounds(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (demo->parsed()) return cmd_glue_demo(cfg, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << " (raise --node-budget/--memory-budget or use a smaller n)\n";
        return kBudget;
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace symsft::cli
