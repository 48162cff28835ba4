#pragma once

#include <cstdint>

#include "putvar/random.hpp"

namespace putvar {

/// Lognormal price dynamics dS/S = mu dt + sigma dB, plus the riskless rate.
/// Rates are per year, volatility per sqrt(year).
struct MarketModel {
    double s0 = 100.0;
    double mu = 0.1;
    double sigma = 0.15;
    double r = 0.05;

    /// Throws DomainError unless s0 > 0, sigma > 0 and every field is finite.
    void validate() const;

    /// Log-drift mu - sigma^2 / 2.
    double log_drift() const noexcept { return mu - 0.5 * sigma * sigma; }
};

/// Option maturity tau and liquidation date T, both in days.
struct Horizon {
    int tau_days = 35;
    int t_days = 40;
    int days_per_year = 365;

    /// Throws DomainError unless 1 <= tau_days < t_days and the day count is
    /// one of 250, 252, 360, 365.
    void validate() const;

    double tau() const noexcept { return static_cast<double>(tau_days) / days_per_year; }
    double maturity() const noexcept { return static_cast<double>(t_days) / days_per_year; }
    /// T - tau in years.
    double gap() const noexcept {
        return static_cast<double>(t_days - tau_days) / days_per_year;
    }
};

bool is_supported_day_count(int days_per_year) noexcept;

struct TerminalPair {
    double s_tau;
    double s_T;
};

/// Prices at tau and T driven by the Brownian increments X = B_tau and
/// Y = B_T - B_tau.
TerminalPair terminal_pair_from_increments(const MarketModel& model, const Horizon& horizon,
                                           double x, double y) noexcept;

/// Draw `index` of `stream` mapped to (S_tau, S_T). Both prices are > 0.
TerminalPair sample_terminal_pair(const MarketModel& model, const Horizon& horizon,
                                  const RandomStream& stream, std::uint64_t index = 0);

} // namespace putvar
