#pragma once

#include <cstdint>

#include "putvar/loss_model.hpp"

namespace putvar {

struct BacktestReport {
    std::int64_t n_trials = 0;
    std::int64_t failures = 0;
    double frequency = 0.0;
    double t_statistic = 0.0;
    double critical_value = 0.0; // Phi^{-1}(1 - beta)
    bool rejected = false;
    double var_used = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// (freq - alpha) / sqrt(alpha (1 - alpha) / n).
double failure_test_statistic(double frequency, double alpha, std::int64_t n_trials);

/// One-sided test of H0: failure probability <= alpha against H1: > alpha,
/// rejecting when the statistic reaches the 1 - beta normal quantile.
BacktestReport assess_failures(std::int64_t failures, std::int64_t n_trials, double alpha,
                               double beta, double var_used);

/// Simulates n_trials independent (S_tau, S_T) draws from `stream`; trial i
/// fails when its loss strictly exceeds var_level.
BacktestReport run_backtest(const MarketModel& model, const Horizon& horizon,
                            const HedgePlan& plan, double var_level, double alpha,
                            std::int64_t n_trials, double beta, const RandomStream& stream);

} // namespace putvar
