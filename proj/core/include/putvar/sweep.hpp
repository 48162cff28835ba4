#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "putvar/backtester.hpp"
#include "putvar/config.hpp"
#include "putvar/strategy_optimizer.hpp"

namespace putvar {

/// Parameter pairs varied together; everything else stays at its standard value.
enum class Block { Market, Time, Management, Rate };

inline constexpr std::array<Block, 4> kAllBlocks = {Block::Market, Block::Time,
                                                    Block::Management, Block::Rate};

std::string_view to_string(Block block) noexcept;
/// Accepts market, time, management, rate. Throws DomainError otherwise.
Block parse_block(std::string_view name);

/// Full grid cardinality of a block (product of its axis counts).
std::size_t block_size(Block block, const ParameterTable& table);

/// Scenario for flat cell index `cell` of `block`; the first axis is outer.
Scenario cell_scenario(const RunConfig& config, Block block, std::size_t cell);

/// Optimised strategy for one method plus its out-of-sample backtest.
struct MethodOutcome {
    Method method = Method::MinVar;
    bool feasible = false;
    std::string diagnostic; // why the method produced no strategy
    OptimizationResult result;
    BacktestReport report;

    bool passed() const noexcept { return feasible && !report.rejected; }
};

/// Optimise `method` in `scenario` and backtest the optimum against its own VaR.
/// Infeasible or unsolvable cells come back with feasible = false.
MethodOutcome evaluate_method(Method method, const Scenario& scenario, const RunConfig& config);

struct SweepRow {
    Block block = Block::Market;
    std::size_t cell = 0;
    Scenario scenario;
    MethodOutcome abrw;
    MethodOutcome minvar;

    const MethodOutcome& outcome(Method m) const noexcept {
        return m == Method::Abrw ? abrw : minvar;
    }
};

struct SweepSpec {
    Block block = Block::Market;
    RunConfig config; // table, stride, trials, samples and seed
};

/// Every `stride`-th cell of the block's grid, in grid order.
///
/// Each cell draws its VaR sample and its backtest sample from the same two
/// seed-derived streams, so neighbouring cells differ only through their
/// parameters (common random numbers across the grid).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct PassCount {
    std::size_t passed = 0;
    std::size_t infeasible = 0;
    std::size_t total = 0;

    double rate() const noexcept {
        return total == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(total);
    }
    PassCount& operator+=(const PassCount& o) noexcept {
        passed += o.passed;
        infeasible += o.infeasible;
        total += o.total;
        return *this;
    }
};

struct BlockPassRates {
    Block block;
    PassCount abrw;
    PassCount minvar;
};

struct PassRateTable {
    std::vector<BlockPassRates> blocks; // in kAllBlocks order, only blocks present
    PassCount abrw_total;
    PassCount minvar_total;
};

/// Pass rate = cells not rejected / cells evaluated, per method and block.
/// Infeasible cells count in the denominator and never pass.
PassRateTable aggregate_pass_rates(std::span<const SweepRow> rows);

/// One header row, one line per (cell, method); floats with 10 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

nlohmann::json sweep_summary(const RunConfig& config, std::span<const SweepRow> rows);

struct CurvePoint {
    double budget;
    MethodOutcome abrw;
    MethodOutcome minvar;
};

/// Failure rate of both methods as the budget varies, other values standard.
std::vector<CurvePoint> budget_curve(std::span<const double> budgets, const RunConfig& config);

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points);

/// `%.10g`, or an empty field for non-finite values.
std::string format_number(double value);

} // namespace putvar
