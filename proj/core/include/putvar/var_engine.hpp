#pragma once

#include <cstdint>
#include <optional>

#include "putvar/loss_model.hpp"

namespace putvar {

struct VarQuery {
    double alpha = 0.05;
    double v_tolerance = 1e-3;
    std::int64_t n_samples = 200'000;

    void validate() const;
};

/// Solves Q(v) = alpha for a hedge plan on one fixed X-sample.
///
/// The returned v* is the midpoint of the grid cell [k tol, (k+1) tol] with
/// Q(k tol) >= alpha > Q((k+1) tol), tol = v_tolerance. The cold-start bracket
/// begins at the loss upper bound (where Q = 0) and steps down by S0 until
/// Q >= alpha, at most 50 times. A hint (e.g. the VaR of a neighbouring plan)
/// only changes where the search starts, never the answer.
class VarSolver {
public:
    VarSolver(const MarketModel& model, const Horizon& horizon, const VarQuery& query,
              const RandomStream& stream);

    /// Throws UnsolvableError if no bracket exists.
    double solve(const HedgePlan& plan, std::optional<double> hint = std::nullopt) const;

    const ExceedanceEstimator& estimator() const noexcept { return estimator_; }
    const VarQuery& query() const noexcept { return query_; }

private:
    VarQuery query_;
    ExceedanceEstimator estimator_;
};

double solve_var(const MarketModel& model, const Horizon& horizon, const HedgePlan& plan,
                 const VarQuery& query, const RandomStream& stream);

} // namespace putvar
