#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "putvar/market.hpp"
#include "putvar/option_pricing.hpp"
#include "putvar/strategy_optimizer.hpp"
#include "putvar/var_engine.hpp"

namespace putvar {

/// One row of the parameter table: sweep range plus the standard value used
/// whenever the parameter is held fixed.
struct ParameterRange {
    double lo;
    double hi;
    double step;
    double standard;

    /// Grid cardinality, round((hi - lo) / step) + 1.
    std::size_t count() const;
    /// lo + i * step, computed without accumulation.
    double at(std::size_t i) const noexcept { return lo + static_cast<double>(i) * step; }
    void validate(const std::string& name) const;
};

struct ParameterTable {
    ParameterRange mu{-0.1, 0.1, 0.01, 0.1};
    ParameterRange sigma2{0.001, 0.21, 0.001, 0.0225};
    ParameterRange tau_days{1, 40, 1, 35};
    ParameterRange gap_days{1, 40, 1, 5}; // T - tau
    ParameterRange budget{0.05, 5, 0.05, 0.35};
    ParameterRange alpha{0.01, 0.05, 0.005, 0.05};
    // Step 0.0001 gives 1501 rate cells.
    ParameterRange rate{0.01, 0.16, 0.0001, 0.05};
};

/// A fully specified market, horizon and risk target.
struct Scenario {
    MarketModel market;
    Horizon horizon;
    RiskBudget risk;
};

/// Explicit plan for the prob / var / backtest commands.
struct PlanInput {
    std::optional<double> strike;
    std::optional<double> ratio;
    std::optional<double> var_level;
    std::optional<double> threshold; // v for exceedance queries
};

struct RunConfig {
    double s0 = 100.0;
    int days_per_year = 365;
    ParameterTable table;
    StrikeChain chain = default_strike_chain();

    std::int64_t n_samples = 200'000;
    double v_tolerance = 1e-3;
    std::int64_t n_trials = 100'000;
    double beta = 0.05;
    std::uint64_t seed = 12345;
    int workers = 0;
    std::size_t stride = 1;
    bool relax_budget = false;
    PlanInput plan;

    /// Every parameter at its standard value.
    Scenario standard() const;
    VarQuery query() const { return {standard().risk.alpha, v_tolerance, n_samples}; }
    void validate() const;
};

/// Parses `lo:hi:step` or a comma / space separated list.
StrikeChain parse_strike_list(const std::string& text);

/// Reads `key = value` lines (`#` starts a comment) on top of `base`.
/// Table parameters accept either `lo hi step standard` or a single standard
/// value. Throws DomainError with the line number on malformed input.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const Scenario& scenario);

} // namespace putvar
