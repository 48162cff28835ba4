#include "putvar/market.hpp"

#include <cmath>
#include <string>

#include "putvar/errors.hpp"

namespace putvar {

void MarketModel::validate() const {
    if (!std::isfinite(s0) || !std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(r)) {
        throw DomainError("market model fields must be finite");
    }
    if (s0 <= 0.0) throw DomainError("s0 must be positive, got " + std::to_string(s0));
    if (sigma <= 0.0) throw DomainError("sigma must be positive, got " + std::to_string(sigma));
}

bool is_supported_day_count(int days_per_year) noexcept {
    return days_per_year == 250 || days_per_year == 252 || days_per_year == 360 ||
           days_per_year == 365;
}

void Horizon::validate() const {
    if (!is_supported_day_count(days_per_year)) {
        throw DomainError("days_per_year must be one of 250, 252, 360, 365, got " +
                          std::to_string(days_per_year));
    }
    if (tau_days < 1) throw DomainError("tau_days must be >= 1");
    if (t_days <= tau_days) {
        throw DomainError("option maturity must precede the liquidation date (tau_days=" +
                          std::to_string(tau_days) + ", t_days=" + std::to_string(t_days) + ")");
    }
}

TerminalPair terminal_pair_from_increments(const MarketModel& model, const Horizon& horizon,
                                           double x, double y) noexcept {
    const double drift = model.log_drift();
    return {model.s0 * std::exp(model.sigma * x + drift * horizon.tau()),
            model.s0 * std::exp(model.sigma * (x + y) + drift * horizon.maturity())};
}

TerminalPair sample_terminal_pair(const MarketModel& model, const Horizon& horizon,
                                  const RandomStream& stream, std::uint64_t index) {
    model.validate();
    horizon.validate();
    const auto z = stream.normals(index);
    return terminal_pair_from_increments(model, horizon, std::sqrt(horizon.tau()) * z[0],
                                         std::sqrt(horizon.gap()) * z[1]);
}

} // namespace putvar
