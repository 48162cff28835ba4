#include "putvar/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "putvar/errors.hpp"

namespace putvar {

std::size_t ParameterRange::count() const {
    return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

void ParameterRange::validate(const std::string& name) const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) ||
        !std::isfinite(standard)) {
        throw DomainError(name + ": range values must be finite");
    }
    if (!(step > 0.0)) throw DomainError(name + ": step must be positive");
    if (hi < lo) throw DomainError(name + ": hi must not be below lo");
}

Scenario RunConfig::standard() const {
    Scenario s;
    s.market = {s0, table.mu.standard, std::sqrt(table.sigma2.standard), table.rate.standard};
    const int tau = static_cast<int>(std::lround(table.tau_days.standard));
    const int gap = static_cast<int>(std::lround(table.gap_days.standard));
    s.horizon = {tau, tau + gap, days_per_year};
    s.risk = {table.alpha.standard, table.budget.standard};
    return s;
}

void RunConfig::validate() const {
    if (!(table.sigma2.standard > 0.0)) throw DomainError("sigma must be positive");
    const Scenario s = standard();
    s.market.validate();
    s.horizon.validate();
    s.risk.validate();
    query().validate();
    table.mu.validate("mu");
    table.sigma2.validate("sigma2");
    table.tau_days.validate("tau");
    table.gap_days.validate("t_minus_tau");
    table.budget.validate("budget");
    table.alpha.validate("alpha");
    table.rate.validate("r");
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
    if (stride < 1) throw DomainError("stride must be >= 1");
    if (workers < 0) throw DomainError("workers must be >= 0");
    if (plan.ratio && !(*plan.ratio >= 0.0 && *plan.ratio <= 1.0)) {
        throw DomainError("hedge ratio must lie in [0, 1]");
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& token, const std::string& context) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) {
        throw DomainError(context + ": expected a number, got '" + token + "'");
    }
    return value;
}

std::vector<double> numbers(const std::string& value, const std::string& context) {
    std::istringstream in(value);
    std::vector<double> out;
    for (std::string tok; in >> tok;) out.push_back(to_double(tok, context));
    return out;
}

void assign_range(ParameterRange& range, const std::string& value, const std::string& context) {
    const auto v = numbers(value, context);
    if (v.size() == 1) {
        range.standard = v[0];
    } else if (v.size() == 4) {
        range = {v[0], v[1], v[2], v[3]};
    } else {
        throw DomainError(context + ": expected 'standard' or 'lo hi step standard'");
    }
}

bool to_bool(const std::string& v, const std::string& context) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw DomainError(context + ": expected a boolean, got '" + v + "'");
}

std::int64_t to_int(const std::string& v, const std::string& context) {
    const double d = to_double(v, context);
    if (d != std::floor(d)) throw DomainError(context + ": expected an integer, got '" + v + "'");
    return static_cast<std::int64_t>(d);
}

} // namespace

StrikeChain parse_strike_list(const std::string& text) {
    const std::string t = trim(text);
    if (std::count(t.begin(), t.end(), ':') == 2) {
        const auto a = t.find(':');
        const auto b = t.find(':', a + 1);
        return StrikeChain::arithmetic(to_double(trim(t.substr(0, a)), "strikes"),
                                       to_double(trim(t.substr(a + 1, b - a - 1)), "strikes"),
                                       to_double(trim(t.substr(b + 1)), "strikes"));
    }
    std::string spaced = t;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    return StrikeChain(numbers(spaced, "strikes"));
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    RunConfig c = std::move(base);
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string ctx = "config line " + std::to_string(line_no) + " (" + key + ")";

        if (key == "s0") c.s0 = to_double(value, ctx);
        else if (key == "mu") assign_range(c.table.mu, value, ctx);
        else if (key == "sigma2") assign_range(c.table.sigma2, value, ctx);
        else if (key == "sigma") {
            const double s = to_double(value, ctx);
            c.table.sigma2.standard = s * s;
        }
        else if (key == "tau") assign_range(c.table.tau_days, value, ctx);
        else if (key == "t_minus_tau") assign_range(c.table.gap_days, value, ctx);
        else if (key == "budget") assign_range(c.table.budget, value, ctx);
        else if (key == "alpha") assign_range(c.table.alpha, value, ctx);
        else if (key == "r") assign_range(c.table.rate, value, ctx);
        else if (key == "days_per_year") c.days_per_year = static_cast<int>(to_int(value, ctx));
        else if (key == "strikes") c.chain = parse_strike_list(value);
        else if (key == "n_samples") c.n_samples = to_int(value, ctx);
        else if (key == "v_tolerance") c.v_tolerance = to_double(value, ctx);
        else if (key == "n_trials") c.n_trials = to_int(value, ctx);
        else if (key == "beta") c.beta = to_double(value, ctx);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(value, ctx));
        else if (key == "workers") c.workers = static_cast<int>(to_int(value, ctx));
        else if (key == "stride") c.stride = static_cast<std::size_t>(to_int(value, ctx));
        else if (key == "relax_budget") c.relax_budget = to_bool(value, ctx);
        else if (key == "strike") c.plan.strike = to_double(value, ctx);
        else if (key == "ratio") c.plan.ratio = to_double(value, ctx);
        else if (key == "var") c.plan.var_level = to_double(value, ctx);
        else if (key == "v") c.plan.threshold = to_double(value, ctx);
        else throw DomainError(ctx + ": unknown key");
    }
    return c;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file " + path.string());
    return parse_config(in, std::move(base));
}

namespace {

nlohmann::json range_json(const ParameterRange& r) {
    return {{"lo", r.lo}, {"hi", r.hi}, {"step", r.step}, {"standard", r.standard},
            {"count", r.count()}};
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

nlohmann::json to_json(const RunConfig& c) {
    std::vector<double> strikes(c.chain.strikes().begin(), c.chain.strikes().end());
    return {
        {"s0", c.s0},
        {"days_per_year", c.days_per_year},
        {"table",
         {{"mu", range_json(c.table.mu)},
          {"sigma2", range_json(c.table.sigma2)},
          {"tau", range_json(c.table.tau_days)},
          {"t_minus_tau", range_json(c.table.gap_days)},
          {"budget", range_json(c.table.budget)},
          {"alpha", range_json(c.table.alpha)},
          {"r", range_json(c.table.rate)}}},
        {"strikes", strikes},
        {"n_samples", c.n_samples},
        {"v_tolerance", c.v_tolerance},
        {"n_trials", c.n_trials},
        {"beta", c.beta},
        {"seed", c.seed},
        {"stride", c.stride},
        {"relax_budget", c.relax_budget},
        {"plan",
         {{"strike", optional_json(c.plan.strike)},
          {"ratio", optional_json(c.plan.ratio)},
          {"var", optional_json(c.plan.var_level)},
          {"v", optional_json(c.plan.threshold)}}},
    };
}

nlohmann::json to_json(const Scenario& s) {
    return {{"s0", s.market.s0},       {"mu", s.market.mu},
            {"sigma", s.market.sigma}, {"r", s.market.r},
            {"tau_days", s.horizon.tau_days}, {"t_days", s.horizon.t_days},
            {"days_per_year", s.horizon.days_per_year},
            {"alpha", s.risk.alpha},   {"budget", s.risk.budget}};
}

} // namespace putvar
