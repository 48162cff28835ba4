#pragma once

#include <string_view>

#include "putvar/option_pricing.hpp"
#include "putvar/var_engine.hpp"

namespace putvar {

struct RiskBudget {
    double alpha = 0.05;
    double budget = 0.35;

    void validate() const;
};

enum class Method { Abrw, MinVar };

std::string_view to_string(Method method) noexcept;

struct OptimizationResult {
    double strike = 0.0;
    double ratio = 0.0;
    double premium = 0.0;
    double var_value = 0.0;
    Method method = Method::MinVar;
    int feasible_strikes = 0;

    double spend() const noexcept { return ratio * premium; }
    HedgePlan plan() const noexcept { return {strike, ratio, premium}; }
};

/// Closed-form VaR that assumes the put always finishes in the money:
///   (S0 + h P) e^{rT} - [(1 - h) S0 e^{(mu - sigma^2/2) T + theta sigma sqrt(T)} + h K e^{r(T - tau)}]
/// with theta = Phi^{-1}(alpha).
double abrw_var(const MarketModel& model, const Horizon& horizon, double strike, double ratio,
                double premium, double alpha);
double abrw_var(const MarketModel& model, const Horizon& horizon, double strike, double ratio,
                double alpha);

struct AbrwOptions {
    /// Replace the binding budget h P = C with h P <= C.
    bool relax_budget = false;
};

/// Minimises abrw_var over the chain with h = C / P_i. Strikes needing h > 1
/// are infeasible and skipped. Ties go to the lowest strike, then lowest ratio.
/// Throws DomainError for C <= 0 and InfeasibleError if no strike qualifies.
OptimizationResult optimize_abrw(const MarketModel& model, const Horizon& horizon,
                                 const StrikeChain& chain, const RiskBudget& risk,
                                 const AbrwOptions& options = {});

struct MinVarOptions {
    double coarse_step = 0.01;
    double fine_step = 0.001;
};

/// Minimises the simulated VaR over strikes and h in [0, min(1, C / P_i)].
///
/// Each strike is scanned on a coarse h-grid (plus the budget-exhausting
/// endpoint); the incumbent is then refined on a fine grid within one coarse
/// step. All candidates share one X-sample drawn from `stream`.
OptimizationResult optimize_minvar(const MarketModel& model, const Horizon& horizon,
                                   const StrikeChain& chain, const RiskBudget& risk,
                                   const VarQuery& query, const RandomStream& stream,
                                   const MinVarOptions& options = {});

} // namespace putvar
