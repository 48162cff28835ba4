#include "putvar/loss_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel_reduce.hpp"
#include "putvar/errors.hpp"
#include "putvar/normal.hpp"
#include "putvar/option_pricing.hpp"

namespace putvar {

void HedgePlan::validate() const {
    if (!std::isfinite(strike) || strike <= 0.0) {
        throw DomainError("hedge strike must be positive, got " + std::to_string(strike));
    }
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw DomainError("hedge ratio must lie in [0, 1], got " + std::to_string(ratio));
    }
    if (!std::isfinite(premium) || premium < 0.0) {
        throw DomainError("premium must be non-negative, got " + std::to_string(premium));
    }
}

HedgePlan make_plan(const MarketModel& model, const Horizon& horizon, double strike,
                    double ratio) {
    HedgePlan plan{strike, ratio, put_price(model, horizon, strike).premium};
    plan.validate();
    return plan;
}

double loss_upper_bound(const MarketModel& model, const Horizon& horizon,
                        const HedgePlan& plan) noexcept {
    return (model.s0 + plan.ratio * plan.premium) * std::exp(model.r * horizon.maturity());
}

double loss(const MarketModel& model, const Horizon& horizon, const HedgePlan& plan,
            double s_tau, double s_T) {
    const double payoff = std::max(plan.strike - s_tau, 0.0);
    return loss_upper_bound(model, horizon, plan) -
           (s_T + plan.ratio * payoff * std::exp(model.r * horizon.gap()));
}

namespace {

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    double slope = 0.0;

    Moments& operator+=(const Moments& o) noexcept {
        sum += o.sum;
        sum_sq += o.sum_sq;
        slope += o.slope;
        return *this;
    }
};

// Everything about (plan, v) that does not depend on the individual X.
struct Thresholds {
    double s0;
    double sigma;
    double log_drift_T;
    double sd_y;
    double c1;
    double hedge_growth; // h e^{r(T - tau)}
    double strike;
    double funded_minus_v; // (S0 + h P0) e^{rT} - v
    bool expired_term_live; // funded_minus_v > 0
    double c2;
};

Thresholds thresholds_for(const MarketModel& model, const Horizon& horizon,
                          const HedgePlan& plan, double v) {
    Thresholds t{};
    t.s0 = model.s0;
    t.sigma = model.sigma;
    t.log_drift_T = model.log_drift() * horizon.maturity();
    t.sd_y = std::sqrt(horizon.gap());
    t.c1 = (std::log(plan.strike / model.s0) - model.log_drift() * horizon.tau()) / model.sigma;
    t.hedge_growth = plan.ratio * std::exp(model.r * horizon.gap());
    t.strike = plan.strike;
    t.funded_minus_v = loss_upper_bound(model, horizon, plan) - v;
    t.expired_term_live = t.funded_minus_v > 0.0;
    t.c2 = t.expired_term_live
               ? (std::log(t.funded_minus_v / model.s0) - t.log_drift_T) / model.sigma
               : 0.0;
    return t;
}

template <bool kSlope, bool kSquares>
Moments accumulate(const Thresholds& t, const double* x, const double* s_tau,
                   std::int64_t begin, std::int64_t end) {
    Moments m;
    const double inv_sd_y = 1.0 / t.sd_y;
    for (std::int64_t i = begin; i < end; ++i) {
        const double xi = x[i];
        double level; // S_T must not exceed this for L >= v
        double log_threshold;
        if (xi <= t.c1) {
            level = t.funded_minus_v - t.hedge_growth * (t.strike - s_tau[i]);
            if (level <= 0.0) continue;
            log_threshold = (std::log(level / t.s0) - t.log_drift_T) / t.sigma;
        } else {
            if (!t.expired_term_live) continue;
            level = t.funded_minus_v;
            log_threshold = t.c2;
        }
        const double z = (log_threshold - xi) * inv_sd_y;
        const double term = std_normal_cdf(z);
        m.sum += term;
        if constexpr (kSquares) m.sum_sq += term * term;
        if constexpr (kSlope) m.slope -= std_normal_pdf(z) * inv_sd_y / (t.sigma * level);
    }
    return m;
}

template <bool kSlope, bool kSquares>
Moments reduce(const MarketModel& model, const Horizon& horizon, const HedgePlan& plan,
               double v, const std::vector<double>& x, const std::vector<double>& s_tau) {
    const Thresholds t = thresholds_for(model, horizon, plan, v);
    const double* xp = x.data();
    const double* sp = s_tau.data();
    return detail::chunked_reduce<Moments>(
        static_cast<std::int64_t>(x.size()), [&](std::int64_t b, std::int64_t e) {
            return accumulate<kSlope, kSquares>(t, xp, sp, b, e);
        });
}

} // namespace

ExceedanceEstimator::ExceedanceEstimator(const MarketModel& model, const Horizon& horizon,
                                         std::int64_t n_samples, const RandomStream& stream)
    : model_(model), horizon_(horizon) {
    model_.validate();
    horizon_.validate();
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    x_.resize(static_cast<std::size_t>(n_samples));
    s_tau_.resize(x_.size());
    const double sd_x = std::sqrt(horizon_.tau());
    const double drift_tau = model_.log_drift() * horizon_.tau();
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const double xi = sd_x * stream.normals(static_cast<std::uint64_t>(i))[0];
        x_[static_cast<std::size_t>(i)] = xi;
        s_tau_[static_cast<std::size_t>(i)] = model_.s0 * std::exp(model_.sigma * xi + drift_tau);
    }
}

ExceedanceEstimate ExceedanceEstimator::estimate(const HedgePlan& plan, double v) const {
    plan.validate();
    const Moments m = reduce<false, true>(model_, horizon_, plan, v, x_, s_tau_);
    const auto n = static_cast<double>(x_.size());
    const double mean = m.sum / n;
    double se = 0.0;
    if (x_.size() > 1) {
        const double var = std::max(m.sum_sq - n * mean * mean, 0.0) / (n - 1.0);
        se = std::sqrt(var / n);
    }
    return {std::clamp(mean, 0.0, 1.0), se, size()};
}

ExceedanceEstimator::Evaluation ExceedanceEstimator::evaluate(const HedgePlan& plan,
                                                              double v) const {
    const Moments m = reduce<true, false>(model_, horizon_, plan, v, x_, s_tau_);
    const auto n = static_cast<double>(x_.size());
    return {std::clamp(m.sum / n, 0.0, 1.0), m.slope / n};
}

double ExceedanceEstimator::probability(const HedgePlan& plan, double v) const {
    const Moments m = reduce<false, false>(model_, horizon_, plan, v, x_, s_tau_);
    return std::clamp(m.sum / static_cast<double>(x_.size()), 0.0, 1.0);
}

ExceedanceEstimate exceedance_prob_prop1(const MarketModel& model, const Horizon& horizon,
                                         const HedgePlan& plan, double v,
                                         std::int64_t n_samples, const RandomStream& stream) {
    return ExceedanceEstimator(model, horizon, n_samples, stream).estimate(plan, v);
}

ExceedanceEstimate exceedance_prob_oracle(const MarketModel& model, const Horizon& horizon,
                                          const HedgePlan& plan, double v,
                                          std::int64_t n_trials, const RandomStream& stream) {
    model.validate();
    horizon.validate();
    plan.validate();
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");
    const double sd_x = std::sqrt(horizon.tau());
    const double sd_y = std::sqrt(horizon.gap());

    struct Count {
        std::int64_t hits = 0;
        Count& operator+=(const Count& o) noexcept {
            hits += o.hits;
            return *this;
        }
    };
    const Count c = detail::chunked_reduce<Count>(n_trials, [&](std::int64_t b, std::int64_t e) {
        Count local;
        for (std::int64_t i = b; i < e; ++i) {
            const auto z = stream.normals(static_cast<std::uint64_t>(i));
            const auto p = terminal_pair_from_increments(model, horizon, sd_x * z[0], sd_y * z[1]);
            if (loss(model, horizon, plan, p.s_tau, p.s_T) >= v) ++local.hits;
        }
        return local;
    });
    const double freq = static_cast<double>(c.hits) / static_cast<double>(n_trials);
    return {freq, std::sqrt(freq * (1.0 - freq) / static_cast<double>(n_trials)), n_trials};
}

} // namespace putvar
