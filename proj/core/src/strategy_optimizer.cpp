#include "putvar/strategy_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "putvar/errors.hpp"
#include "putvar/normal.hpp"

namespace putvar {

void RiskBudget::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (!std::isfinite(budget) || budget < 0.0) {
        throw DomainError("budget must be non-negative, got " + std::to_string(budget));
    }
}

std::string_view to_string(Method method) noexcept {
    return method == Method::Abrw ? "abrw" : "minvar";
}

double abrw_var(const MarketModel& model, const Horizon& horizon, double strike, double ratio,
                double premium, double alpha) {
    const double T = horizon.maturity();
    const double theta = std_normal_quantile(alpha);
    const double stressed_stock =
        model.s0 * std::exp(model.log_drift() * T + theta * model.sigma * std::sqrt(T));
    return (model.s0 + ratio * premium) * std::exp(model.r * T) -
           ((1.0 - ratio) * stressed_stock + ratio * strike * std::exp(model.r * horizon.gap()));
}

double abrw_var(const MarketModel& model, const Horizon& horizon, double strike, double ratio,
                double alpha) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw DomainError("hedge ratio must lie in [0, 1], got " + std::to_string(ratio));
    }
    return abrw_var(model, horizon, strike, ratio, put_price(model, horizon, strike).premium,
                    alpha);
}

namespace {

// Strictly better VaR wins; on an exact tie, lower strike then lower ratio.
bool improves(const OptimizationResult& candidate, const std::optional<OptimizationResult>& best) {
    if (!best) return true;
    if (candidate.var_value != best->var_value) return candidate.var_value < best->var_value;
    if (candidate.strike != best->strike) return candidate.strike < best->strike;
    return candidate.ratio < best->ratio;
}

// Largest admissible ratio under h P <= C and h <= 1.
double max_ratio(double budget, double premium) {
    return premium > 0.0 ? std::min(1.0, budget / premium) : 1.0;
}

// 0, step, 2 step, ... up to the ceiling, which is always included.
std::vector<double> ratio_grid(double ceiling, double step) {
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double h = k * step;
        if (h > ceiling - 1e-12) break;
        grid.push_back(h);
    }
    grid.push_back(ceiling);
    return grid;
}

} // namespace

OptimizationResult optimize_abrw(const MarketModel& model, const Horizon& horizon,
                                 const StrikeChain& chain, const RiskBudget& risk,
                                 const AbrwOptions& options) {
    risk.validate();
    if (!(risk.budget > 0.0)) {
        throw DomainError("the binding-budget method needs a positive budget");
    }
    const auto quotes = price_chain(model, horizon, chain);

    std::optional<OptimizationResult> best;
    int feasible = 0;
    for (const PutQuote& q : quotes) {
        std::vector<double> ratios;
        if (options.relax_budget) {
            // The objective is affine in h, so an endpoint is optimal.
            ratios = {0.0, max_ratio(risk.budget, q.premium)};
        } else {
            if (!(q.premium > 0.0)) continue;
            const double h = risk.budget / q.premium;
            if (h > 1.0) continue;
            ratios = {h};
        }
        ++feasible;
        for (double h : ratios) {
            OptimizationResult candidate{q.strike, h, q.premium,
                                         abrw_var(model, horizon, q.strike, h, q.premium,
                                                  risk.alpha),
                                         Method::Abrw, 0};
            if (improves(candidate, best)) best = candidate;
        }
    }
    if (!best) {
        throw InfeasibleError("no strike in the chain can absorb a budget of " +
                              std::to_string(risk.budget) +
                              " with a hedge ratio <= 1 (every premium is below the budget)");
    }
    best->feasible_strikes = feasible;
    return *best;
}

OptimizationResult optimize_minvar(const MarketModel& model, const Horizon& horizon,
                                   const StrikeChain& chain, const RiskBudget& risk,
                                   const VarQuery& query, const RandomStream& stream,
                                   const MinVarOptions& options) {
    risk.validate();
    if (!(options.coarse_step > 0.0) || !(options.fine_step > 0.0)) {
        throw DomainError("search steps must be positive");
    }
    VarQuery q = query;
    q.alpha = risk.alpha;
    const VarSolver solver(model, horizon, q, stream);
    const auto quotes = price_chain(model, horizon, chain);

    // h = 0 is the same unhedged position for every strike.
    const double unhedged = solver.solve(HedgePlan{chain[0], 0.0, quotes.front().premium});

    std::optional<OptimizationResult> best;
    std::vector<double> ceilings(quotes.size());
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        const PutQuote& quote = quotes[i];
        const double ceiling = max_ratio(risk.budget, quote.premium);
        ceilings[i] = ceiling;
        std::optional<double> hint = unhedged;
        for (double h : ratio_grid(ceiling, options.coarse_step)) {
            const double var =
                h == 0.0 ? unhedged : solver.solve(HedgePlan{quote.strike, h, quote.premium}, hint);
            hint = var;
            OptimizationResult candidate{quote.strike, h, quote.premium, var, Method::MinVar, 0};
            if (improves(candidate, best)) best = candidate;
        }
    }

    // Fine pass around the incumbent.
    const std::size_t idx = static_cast<std::size_t>(
        std::find(chain.strikes().begin(), chain.strikes().end(), best->strike) -
        chain.strikes().begin());
    const PutQuote& quote = quotes[idx];
    const double lo = std::max(0.0, best->ratio - options.coarse_step);
    const double hi = std::min(ceilings[idx], best->ratio + options.coarse_step);
    const auto fine_steps = static_cast<int>(std::floor((hi - lo) / options.fine_step + 1e-9));
    std::optional<double> hint = best->var_value;
    for (int k = 0; k <= fine_steps; ++k) {
        const double h = lo + k * options.fine_step;
        const double var =
            h == 0.0 ? unhedged : solver.solve(HedgePlan{quote.strike, h, quote.premium}, hint);
        hint = var;
        OptimizationResult candidate{quote.strike, h, quote.premium, var, Method::MinVar, 0};
        if (improves(candidate, best)) best = candidate;
    }

    best->feasible_strikes = static_cast<int>(quotes.size());
    return *best;
}

} // namespace putvar
