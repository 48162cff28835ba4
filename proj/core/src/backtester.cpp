#include "putvar/backtester.hpp"

#include <cmath>
#include <string>

#include "parallel_reduce.hpp"
#include "putvar/errors.hpp"
#include "putvar/normal.hpp"

namespace putvar {

namespace {

void check_probability(double p, const char* name) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(p));
    }
}

} // namespace

double failure_test_statistic(double frequency, double alpha, std::int64_t n_trials) {
    check_probability(alpha, "alpha");
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");
    return (frequency - alpha) / std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(n_trials));
}

BacktestReport assess_failures(std::int64_t failures, std::int64_t n_trials, double alpha,
                               double beta, double var_used) {
    check_probability(beta, "beta");
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");
    if (failures < 0 || failures > n_trials) {
        throw DomainError("failures must lie in [0, n_trials]");
    }
    BacktestReport report;
    report.n_trials = n_trials;
    report.failures = failures;
    report.frequency = static_cast<double>(failures) / static_cast<double>(n_trials);
    report.t_statistic = failure_test_statistic(report.frequency, alpha, n_trials);
    report.critical_value = std_normal_quantile(1.0 - beta);
    report.rejected = report.t_statistic >= report.critical_value;
    report.var_used = var_used;
    report.alpha = alpha;
    report.beta = beta;
    return report;
}

BacktestReport run_backtest(const MarketModel& model, const Horizon& horizon,
                            const HedgePlan& plan, double var_level, double alpha,
                            std::int64_t n_trials, double beta, const RandomStream& stream) {
    model.validate();
    horizon.validate();
    plan.validate();
    check_probability(alpha, "alpha");
    check_probability(beta, "beta");
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");

    const double sd_x = std::sqrt(horizon.tau());
    const double sd_y = std::sqrt(horizon.gap());
    struct Count {
        std::int64_t failures = 0;
        Count& operator+=(const Count& o) noexcept {
            failures += o.failures;
            return *this;
        }
    };
    const Count c = detail::chunked_reduce<Count>(n_trials, [&](std::int64_t b, std::int64_t e) {
        Count local;
        for (std::int64_t i = b; i < e; ++i) {
            const auto z = stream.normals(static_cast<std::uint64_t>(i));
            const auto p = terminal_pair_from_increments(model, horizon, sd_x * z[0], sd_y * z[1]);
            if (loss(model, horizon, plan, p.s_tau, p.s_T) > var_level) ++local.failures;
        }
        return local;
    });
    return assess_failures(c.failures, n_trials, alpha, beta, var_level);
}

} // namespace putvar
