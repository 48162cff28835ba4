#pragma once

#include <cstdint>
#include <vector>

#include "putvar/market.hpp"
#include "putvar/random.hpp"

namespace putvar {

/// Long one share, long `ratio` puts struck at `strike` bought at `premium`.
struct HedgePlan {
    double strike = 100.0;
    double ratio = 0.0;
    double premium = 0.0;

    /// Throws DomainError unless strike > 0, 0 <= ratio <= 1, premium >= 0.
    void validate() const;
    double spend() const noexcept { return ratio * premium; }
};

/// Plan whose premium is the Black-Scholes price of `strike` under `model`.
HedgePlan make_plan(const MarketModel& model, const Horizon& horizon, double strike,
                    double ratio);

struct ExceedanceEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
};

/// Loss at T of the hedged position against its riskless funding:
///   L = (S0 + h P0) e^{rT} - (S_T + h (K - S_tau)^+ e^{r(T - tau)}).
double loss(const MarketModel& model, const Horizon& horizon, const HedgePlan& plan,
            double s_tau, double s_T);

/// (S0 + h P0) e^{rT}; the loss can never reach beyond this value.
double loss_upper_bound(const MarketModel& model, const Horizon& horizon,
                        const HedgePlan& plan) noexcept;

/// Conditional Monte Carlo estimate of Q(v) = Prob{L >= v}.
///
/// Holds one fixed sample of X = B_tau. For each X the probability over the
/// remaining increment Y = B_T - B_tau is integrated in closed form:
///
///   Q(v) = E[ 1{X <= c1} F_Y(g(X) - X) ] + E[ 1{X > c1} F_Y(c2 - X) ]
///
/// where c1 is the log-moneyness cut at which the put expires worthless,
/// g and c2 are the log-thresholds S_T must stay below (with and without the
/// put payoff). A non-positive log argument means the threshold for S_T is
/// not positive, so the term is 0. Reusing the sample across v makes the
/// estimate a smooth, non-increasing function of v.
class ExceedanceEstimator {
public:
    ExceedanceEstimator(const MarketModel& model, const Horizon& horizon,
                        std::int64_t n_samples, const RandomStream& stream);

    ExceedanceEstimate estimate(const HedgePlan& plan, double v) const;

    struct Evaluation {
        double probability;
        double slope; // dQ/dv, never positive
    };
    /// Mean estimate and its exact derivative in v (for the same sample).
    Evaluation evaluate(const HedgePlan& plan, double v) const;
    double probability(const HedgePlan& plan, double v) const;

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(x_.size()); }
    const MarketModel& model() const noexcept { return model_; }
    const Horizon& horizon() const noexcept { return horizon_; }

private:
    MarketModel model_;
    Horizon horizon_;
    std::vector<double> x_;
    std::vector<double> s_tau_;
};

/// Proposition-style estimate with a freshly drawn X-sample of size n_samples.
ExceedanceEstimate exceedance_prob_prop1(const MarketModel& model, const Horizon& horizon,
                                         const HedgePlan& plan, double v,
                                         std::int64_t n_samples, const RandomStream& stream);

/// Direct simulation: fraction of (S_tau, S_T) draws with loss >= v, with its
/// binomial standard error.
ExceedanceEstimate exceedance_prob_oracle(const MarketModel& model, const Horizon& horizon,
                                          const HedgePlan& plan, double v,
                                          std::int64_t n_trials, const RandomStream& stream);

} // namespace putvar
