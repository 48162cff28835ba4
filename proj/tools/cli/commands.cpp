#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "putvar/backtester.hpp"
#include "putvar/config.hpp"
#include "putvar/errors.hpp"
#include "putvar/loss_model.hpp"
#include "putvar/parallel.hpp"
#include "putvar/presets.hpp"
#include "putvar/strategy_optimizer.hpp"
#include "putvar/sweep.hpp"
#include "putvar/var_engine.hpp"

namespace putvar::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::string config_path;
    std::string preset;
    std::optional<double> s0, mu, sigma, sigma2, r, budget, alpha, tolerance, beta;
    std::optional<double> strike, ratio, var_level, threshold;
    std::optional<int> tau_days, t_days, days_per_year, workers;
    std::optional<std::int64_t> samples, trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> stride;
    std::optional<std::string> strikes;
    bool json = false;
    bool relax_budget = false;
};

enum class Profile { None, Desk, Full };

void add_common_options(CLI::App& app, Overrides& o) {
    app.add_option("--config", o.config_path,
                   std::string("Key-value config file (default: $") + kConfigEnv + ")");
    app.add_option("--preset", o.preset, "Named scenario (see `putvar presets`)");
    app.add_option("--s0", o.s0, "Initial stock price");
    app.add_option("--mu", o.mu, "Drift per year");
    app.add_option("--sigma", o.sigma, "Volatility per sqrt(year)");
    app.add_option("--sigma2", o.sigma2, "Variance per year (alternative to --sigma)");
    app.add_option("--r", o.r, "Riskless rate per year");
    app.add_option("--tau-days", o.tau_days, "Option maturity in days");
    app.add_option("--t-days", o.t_days, "Liquidation date in days");
    app.add_option("--days-per-year", o.days_per_year, "Day count: 250, 252, 360 or 365");
    app.add_option("--strikes", o.strikes, "Strike chain, lo:hi:step or a comma list");
    app.add_option("--budget", o.budget, "Hedging budget C");
    app.add_option("--alpha", o.alpha, "VaR level");
    app.add_option("--samples", o.samples, "X-sample size for the VaR estimate");
    app.add_option("--tolerance", o.tolerance, "VaR bracket width");
    app.add_option("--trials", o.trials, "Backtest trials");
    app.add_option("--beta", o.beta, "Significance level of the failure-rate test");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--workers", o.workers, "Worker threads (0 = all)");
    app.add_flag("--json", o.json, "Machine-readable output");
}

RunConfig build_config(const Overrides& o, Profile profile) {
    RunConfig c;
    if (!o.preset.empty()) find_preset(o.preset).apply(c);

    std::string path = o.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kConfigEnv)) path = env;
    }
    if (!path.empty()) {
        std::ifstream probe(path);
        if (!probe) throw IoError("cannot read config file " + path);
        c = load_config_file(path, c);
    }

    if (profile == Profile::Desk) {
        c.n_samples = 50'000;
        c.n_trials = 20'000;
        c.stride = 10;
    } else if (profile == Profile::Full) {
        c.n_samples = 200'000;
        c.n_trials = 100'000;
        c.stride = 1;
    }

    if (o.s0) c.s0 = *o.s0;
    if (o.mu) c.table.mu.standard = *o.mu;
    if (o.sigma) c.table.sigma2.standard = *o.sigma * *o.sigma;
    if (o.sigma2) c.table.sigma2.standard = *o.sigma2;
    if (o.sigma && !(*o.sigma > 0.0)) throw DomainError("sigma must be positive");
    if (o.r) c.table.rate.standard = *o.r;
    if (o.days_per_year) c.days_per_year = *o.days_per_year;
    if (o.tau_days || o.t_days) {
        const Scenario s = c.standard();
        const int tau = o.tau_days.value_or(s.horizon.tau_days);
        const int t = o.t_days.value_or(s.horizon.t_days);
        c.table.tau_days.standard = tau;
        c.table.gap_days.standard = t - tau;
    }
    if (o.strikes) c.chain = parse_strike_list(*o.strikes);
    if (o.budget) c.table.budget.standard = *o.budget;
    if (o.alpha) c.table.alpha.standard = *o.alpha;
    if (o.samples) c.n_samples = *o.samples;
    if (o.tolerance) c.v_tolerance = *o.tolerance;
    if (o.trials) c.n_trials = *o.trials;
    if (o.beta) c.beta = *o.beta;
    if (o.seed) c.seed = *o.seed;
    if (o.workers) c.workers = *o.workers;
    if (o.stride) c.stride = *o.stride;
    if (o.relax_budget) c.relax_budget = true;
    if (o.strike) c.plan.strike = *o.strike;
    if (o.ratio) c.plan.ratio = *o.ratio;
    if (o.var_level) c.plan.var_level = *o.var_level;
    if (o.threshold) c.plan.threshold = *o.threshold;

    c.validate();
    set_worker_count(c.workers);
    return c;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void print_scenario(std::ostream& out, const Scenario& s) {
    out << "# s0=" << fmt("%g", s.market.s0) << " mu=" << fmt("%g", s.market.mu)
        << " sigma=" << fmt("%g", s.market.sigma) << " r=" << fmt("%g", s.market.r)
        << " tau=" << s.horizon.tau_days << "d T=" << s.horizon.t_days
        << "d basis=" << s.horizon.days_per_year << " alpha=" << fmt("%g", s.risk.alpha)
        << " budget=" << fmt("%g", s.risk.budget) << '\n';
}

json envelope(const RunConfig& c) {
    return {{"config", to_json(c)}, {"scenario", to_json(c.standard())}};
}

json to_json(const ExceedanceEstimate& e) {
    return {{"probability", e.probability}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

json to_json(const OptimizationResult& r, double budget) {
    return {{"method", to_string(r.method)},
            {"strike", r.strike},
            {"ratio", r.ratio},
            {"premium", r.premium},
            {"var", r.var_value},
            {"spend", r.spend()},
            {"budget", budget},
            {"budget_binding", std::abs(r.spend() - budget) <= 1e-9},
            {"feasible_strikes", r.feasible_strikes}};
}

json to_json(const BacktestReport& b) {
    return {{"n_trials", b.n_trials},       {"failures", b.failures},
            {"frequency", b.frequency},     {"t_statistic", b.t_statistic},
            {"critical_value", b.critical_value}, {"rejected", b.rejected},
            {"var_used", b.var_used},       {"alpha", b.alpha},
            {"beta", b.beta}};
}

HedgePlan require_plan(const RunConfig& c) {
    if (!c.plan.strike || !c.plan.ratio) {
        throw DomainError("this command needs --strike and --ratio");
    }
    const Scenario s = c.standard();
    return make_plan(s.market, s.horizon, *c.plan.strike, *c.plan.ratio);
}

int cmd_price(const RunConfig& c, bool as_json, std::ostream& out) {
    const Scenario s = c.standard();
    const auto quotes = price_chain(s.market, s.horizon, c.chain);
    if (as_json) {
        json j = envelope(c);
        j["quotes"] = json::array();
        for (const auto& q : quotes) {
            j["quotes"].push_back(
                {{"strike", q.strike}, {"premium", q.premium}, {"tau_years", q.tau_years}});
        }
        out << j.dump(2) << '\n';
        return kOk;
    }
    print_scenario(out, s);
    out << "    strike       premium\n";
    for (const auto& q : quotes) {
        out << fmt("%10.4f", q.strike) << "  " << fmt("%12.6f", q.premium) << '\n';
    }
    return kOk;
}

int cmd_prob(const RunConfig& c, const std::string& method, bool as_json, std::ostream& out) {
    const Scenario s = c.standard();
    const HedgePlan plan = require_plan(c);
    if (!c.plan.threshold) throw DomainError("prob needs --v (the loss threshold)");
    const double v = *c.plan.threshold;
    json results = json::object();
    std::string text;
    if (method == "prop1" || method == "both") {
        const auto e = exceedance_prob_prop1(s.market, s.horizon, plan, v, c.n_samples,
                                             streams::for_purpose(c.seed, streams::kVarEstimation));
        results["prop1"] = to_json(e);
        text += "conditional  P(L >= v) = " + fmt("%.6f", e.probability) + "  (se " +
                fmt("%.2e", e.std_error) + ", n = " + std::to_string(e.n_samples) + ")\n";
    }
    if (method == "oracle" || method == "both") {
        const auto e = exceedance_prob_oracle(s.market, s.horizon, plan, v, c.n_samples,
                                              streams::for_purpose(c.seed, streams::kOracle));
        results["oracle"] = to_json(e);
        text += "simulation   P(L >= v) = " + fmt("%.6f", e.probability) + "  (se " +
                fmt("%.2e", e.std_error) + ", n = " + std::to_string(e.n_samples) + ")\n";
    }
    if (as_json) {
        json j = envelope(c);
        j["plan"] = {{"strike", plan.strike}, {"ratio", plan.ratio}, {"premium", plan.premium}};
        j["v"] = v;
        j["estimates"] = results;
        out << j.dump(2) << '\n';
        return kOk;
    }
    print_scenario(out, s);
    out << "plan K=" << fmt("%g", plan.strike) << " h=" << fmt("%g", plan.ratio)
        << " premium=" << fmt("%.6f", plan.premium) << " v=" << fmt("%g", v) << '\n'
        << text;
    return kOk;
}

int cmd_var(const RunConfig& c, bool as_json, std::ostream& out) {
    const Scenario s = c.standard();
    const HedgePlan plan = require_plan(c);
    VarQuery q = c.query();
    const double v = solve_var(s.market, s.horizon, plan, q,
                               streams::for_purpose(c.seed, streams::kVarEstimation));
    const double closed = abrw_var(s.market, s.horizon, plan.strike, plan.ratio, plan.premium,
                                   s.risk.alpha);
    if (as_json) {
        json j = envelope(c);
        j["plan"] = {{"strike", plan.strike}, {"ratio", plan.ratio}, {"premium", plan.premium}};
        j["var"] = v;
        j["abrw_var"] = closed;
        out << j.dump(2) << '\n';
        return kOk;
    }
    print_scenario(out, s);
    out << "plan K=" << fmt("%g", plan.strike) << " h=" << fmt("%g", plan.ratio)
        << " premium=" << fmt("%.6f", plan.premium) << '\n'
        << "VaR (simulated, n=" << q.n_samples << ")  " << fmt("%.4f", v) << '\n'
        << "VaR (in-the-money closed form)  " << fmt("%.4f", closed) << '\n';
    return kOk;
}

int cmd_optimize(const RunConfig& c, const std::string& method, bool as_json, std::ostream& out,
                 std::ostream& err) {
    const Scenario s = c.standard();
    json results = json::array();
    std::string text;
    int code = kOk;
    auto describe = [&](const OptimizationResult& r) {
        text += std::string(to_string(r.method)) + ": K=" + fmt("%g", r.strike) +
                " h=" + fmt("%.6f", r.ratio) + " VaR=" + fmt("%.4f", r.var_value) +
                " spend=" + fmt("%.6f", r.spend()) + " of budget " + fmt("%g", s.risk.budget) +
                (std::abs(r.spend() - s.risk.budget) <= 1e-9 ? " (binding)" : " (slack)") +
                " feasible_strikes=" + std::to_string(r.feasible_strikes) + '\n';
        results.push_back(to_json(r, s.risk.budget));
    };
    if (method == "abrw" || method == "both") {
        try {
            describe(optimize_abrw(s.market, s.horizon, c.chain, s.risk,
                                   AbrwOptions{c.relax_budget}));
        } catch (const InfeasibleError& e) {
            err << "abrw: " << e.what() << '\n';
            results.push_back({{"method", "abrw"}, {"infeasible", e.what()}});
            code = kInfeasible;
        }
    }
    if (method == "minvar" || method == "both") {
        describe(optimize_minvar(s.market, s.horizon, c.chain, s.risk, c.query(),
                                 streams::for_purpose(c.seed, streams::kVarEstimation)));
    }
    if (as_json) {
        json j = envelope(c);
        j["results"] = results;
        out << j.dump(2) << '\n';
    } else {
        print_scenario(out, s);
        out << text;
    }
    return code;
}

int cmd_backtest(const RunConfig& c, bool as_json, std::ostream& out) {
    const Scenario s = c.standard();
    const HedgePlan plan = require_plan(c);
    if (!c.plan.var_level) throw DomainError("backtest needs --var (the VaR level to test)");
    if (!c.chain.contains(plan.strike)) {
        throw DomainError("strike " + fmt("%g", plan.strike) + " is not in the strike chain");
    }
    const auto report = run_backtest(s.market, s.horizon, plan, *c.plan.var_level, s.risk.alpha,
                                     c.n_trials, c.beta,
                                     streams::for_purpose(c.seed, streams::kBacktest));
    if (as_json) {
        json j = envelope(c);
        j["plan"] = {{"strike", plan.strike}, {"ratio", plan.ratio}, {"premium", plan.premium}};
        j["report"] = to_json(report);
        out << j.dump(2) << '\n';
        return kOk;
    }
    print_scenario(out, s);
    out << "plan K=" << fmt("%g", plan.strike) << " h=" << fmt("%g", plan.ratio)
        << " VaR=" << fmt("%g", report.var_used) << '\n'
        << "failures " << report.failures << " / " << report.n_trials
        << "  frequency " << fmt("%.5f", report.frequency) << '\n'
        << "T = " << fmt("%.4f", report.t_statistic) << "  critical "
        << fmt("%.4f", report.critical_value) << "  -> "
        << (report.rejected ? "REJECTED (failure rate above alpha)" : "not rejected") << '\n';
    return kOk;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    if (!f) throw IoError("failed writing " + path);
}

int cmd_sweep(const RunConfig& c, const std::string& block_name, const std::string& csv_path,
              const std::string& summary_path, bool as_json, std::ostream& out) {
    std::vector<Block> blocks;
    if (block_name == "all") {
        blocks.assign(kAllBlocks.begin(), kAllBlocks.end());
    } else {
        blocks.push_back(parse_block(block_name));
    }
    std::vector<SweepRow> rows;
    for (Block b : blocks) {
        auto part = run_sweep(SweepSpec{b, c});
        rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    }
    const json summary = sweep_summary(c, rows);
    if (!csv_path.empty()) {
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        write_file(csv_path, csv.str());
    }
    if (!summary_path.empty()) write_file(summary_path, summary.dump(2) + "\n");
    if (as_json) {
        out << summary.dump(2) << '\n';
        return kOk;
    }
    const PassRateTable table = aggregate_pass_rates(rows);
    out << "block         cells   abrw pass   minvar pass   abrw infeasible\n";
    auto line = [&](const std::string& name, const PassCount& a, const PassCount& m) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-12s %6zu   %8.2f%%   %10.2f%%   %15zu\n", name.c_str(),
                      a.total, 100.0 * a.rate(), 100.0 * m.rate(), a.infeasible);
        out << buf;
    };
    for (const auto& b : table.blocks) line(std::string(to_string(b.block)), b.abrw, b.minvar);
    line("total", table.abrw_total, table.minvar_total);
    return kOk;
}

std::vector<double> parse_budget_grid(const std::string& text) {
    const StrikeChain grid = parse_strike_list(text); // same syntax, positive and increasing
    return {grid.strikes().begin(), grid.strikes().end()};
}

int cmd_curve(const RunConfig& c, const std::string& grid_text, const std::string& csv_path,
              bool as_json, std::ostream& out) {
    const auto budgets = parse_budget_grid(grid_text);
    const auto points = budget_curve(budgets, c);
    std::ostringstream csv;
    write_curve_csv(csv, points);
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    if (as_json) {
        json j = envelope(c);
        j["points"] = json::array();
        for (const auto& p : points) {
            json point = {{"budget", p.budget}};
            for (const MethodOutcome* o : {&p.abrw, &p.minvar}) {
                const std::string key(to_string(o->method));
                point[key] = o->feasible
                                 ? json{{"strike", o->result.strike},
                                        {"ratio", o->result.ratio},
                                        {"var", o->result.var_value},
                                        {"failure_rate", o->report.frequency},
                                        {"rejected", o->report.rejected}}
                                 : json{{"infeasible", o->diagnostic}};
            }
            j["points"].push_back(point);
        }
        out << j.dump(2) << '\n';
        return kOk;
    }
    print_scenario(out, c.standard());
    out << csv.str();
    return kOk;
}

int cmd_presets(std::ostream& out) {
    for (const Preset& p : presets()) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-16.*s %.*s\n", static_cast<int>(p.name.size()),
                      p.name.data(), static_cast<int>(p.description.size()),
                      p.description.data());
        out << buf;
    }
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Put-hedged stock VaR: pricing, exceedance probability, optimisation, "
                 "backtesting and parameter sweeps",
                 "putvar"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Overrides o;
    add_common_options(app, o);

    auto* price = app.add_subcommand("price", "Black-Scholes premiums for the strike chain");

    std::string prob_method = "both";
    auto* prob = app.add_subcommand("prob", "Probability that the loss reaches a threshold");
    prob->add_option("--strike", o.strike, "Put strike");
    prob->add_option("--ratio", o.ratio, "Hedge ratio in [0, 1]");
    prob->add_option("--v", o.threshold, "Loss threshold");
    prob->add_option("--method", prob_method, "prop1, oracle or both")
        ->check(CLI::IsMember({"prop1", "oracle", "both"}));

    auto* var = app.add_subcommand("var", "VaR of a hedge plan");
    var->add_option("--strike", o.strike, "Put strike");
    var->add_option("--ratio", o.ratio, "Hedge ratio in [0, 1]");

    std::string opt_method = "both";
    auto* optimize = app.add_subcommand("optimize", "Optimal strike and hedge ratio");
    optimize->add_option("--method", opt_method, "abrw, minvar or both")
        ->check(CLI::IsMember({"abrw", "minvar", "both"}));
    optimize->add_flag("--relax-budget", o.relax_budget,
                       "Binding-budget method with h P <= C instead of h P = C");

    auto* backtest = app.add_subcommand("backtest", "Failure-rate test of a plan against a VaR");
    backtest->add_option("--strike", o.strike, "Put strike");
    backtest->add_option("--ratio", o.ratio, "Hedge ratio in [0, 1]");
    backtest->add_option("--var", o.var_level, "VaR level to test");

    std::string block = "market";
    std::string profile_name = "desk";
    std::string csv_path;
    std::string summary_path;
    auto* sweep = app.add_subcommand("sweep", "Pass rates over a parameter block");
    sweep->add_option("--block", block, "market, time, management, rate or all")
        ->check(CLI::IsMember({"market", "time", "management", "rate", "all"}));
    sweep->add_option("--profile", profile_name, "desk (strided, fewer trials) or full")
        ->check(CLI::IsMember({"desk", "full"}));
    sweep->add_option("--stride", o.stride, "Evaluate every n-th grid cell");
    sweep->add_option("--csv", csv_path, "Write per-cell rows to this CSV file");
    sweep->add_option("--summary", summary_path, "Write the JSON summary to this file");
    sweep->add_flag("--relax-budget", o.relax_budget, "Relax the binding budget for ABRW");

    std::string grid = "0.05:5:0.05";
    std::string curve_profile = "desk";
    auto* curve = app.add_subcommand("curve", "Failure rate against hedging budget");
    curve->add_option("--budgets", grid, "Budget grid, lo:hi:step or a comma list");
    curve->add_option("--profile", curve_profile, "desk or full")
        ->check(CLI::IsMember({"desk", "full"}));
    curve->add_option("--csv", csv_path, "Write the series to this CSV file");

    auto* list = app.add_subcommand("presets", "List named scenarios");

    for (auto* sub : {price, prob, var, optimize, backtest, sweep, curve, list}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "putvar: " << e.what() << '\n' << "Run with --help for usage.\n";
        return kValidation;
    }

    try {
        if (list->parsed()) return cmd_presets(out);
        Profile profile = Profile::None;
        if (sweep->parsed()) profile = profile_name == "full" ? Profile::Full : Profile::Desk;
        if (curve->parsed()) profile = curve_profile == "full" ? Profile::Full : Profile::Desk;
        const RunConfig config = build_config(o, profile);

        if (price->parsed()) return cmd_price(config, o.json, out);
        if (prob->parsed()) return cmd_prob(config, prob_method, o.json, out);
        if (var->parsed()) return cmd_var(config, o.json, out);
        if (optimize->parsed()) return cmd_optimize(config, opt_method, o.json, out, err);
        if (backtest->parsed()) return cmd_backtest(config, o.json, out);
        if (sweep->parsed()) {
            return cmd_sweep(config, block, csv_path, summary_path, o.json, out);
        }
        if (curve->parsed()) return cmd_curve(config, grid, csv_path, o.json, out);
    } catch (const DomainError& e) {
        err << "putvar: invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const InfeasibleError& e) {
        err << "putvar: infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const UnsolvableError& e) {
        err << "putvar: solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const IoError& e) {
        err << "putvar: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "putvar: " << e.what() << '\n';
        return kSolverFailure;
    }
    return kValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("putvar");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace putvar::cli
