#pragma once

#include <span>
#include <vector>

#include "putvar/market.hpp"

namespace putvar {

/// Available put strikes, strictly increasing and positive.
class StrikeChain {
public:
    /// Throws DomainError if empty, unsorted, duplicated, non-positive or non-finite.
    explicit StrikeChain(std::vector<double> strikes);

    /// lo, lo + step, ..., hi (inclusive, count rounded to the nearest step).
    static StrikeChain arithmetic(double lo, double hi, double step);

    std::span<const double> strikes() const noexcept { return strikes_; }
    std::size_t size() const noexcept { return strikes_.size(); }
    double operator[](std::size_t i) const noexcept { return strikes_[i]; }
    bool contains(double strike) const noexcept;

private:
    std::vector<double> strikes_;
};

/// Default chain 70, 75, ..., 130.
StrikeChain default_strike_chain();

struct PutQuote {
    double strike;
    double premium;
    double tau_years;
};

/// European put premium under Black-Scholes, written in the form
///   P = K e^{-r tau} N(d1) - S0 N(d2),
///   d1 = [ln(K/S0) - (r - sigma^2/2) tau] / (sigma sqrt(tau)),  d2 = d1 - sigma sqrt(tau).
/// Result is clamped at zero against round-off.
PutQuote put_price(const MarketModel& model, const Horizon& horizon, double strike);

/// One quote per strike, in chain order.
std::vector<PutQuote> price_chain(const MarketModel& model, const Horizon& horizon,
                                  const StrikeChain& chain);

} // namespace putvar
