#include "putvar/option_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "putvar/errors.hpp"
#include "putvar/normal.hpp"

namespace putvar {

StrikeChain::StrikeChain(std::vector<double> strikes) : strikes_(std::move(strikes)) {
    if (strikes_.empty()) throw DomainError("strike chain must not be empty");
    for (std::size_t i = 0; i < strikes_.size(); ++i) {
        const double k = strikes_[i];
        if (!std::isfinite(k) || k <= 0.0) {
            throw DomainError("strikes must be positive and finite, got " + std::to_string(k));
        }
        if (i > 0 && !(strikes_[i - 1] < k)) {
            throw DomainError("strikes must be strictly increasing");
        }
    }
}

StrikeChain StrikeChain::arithmetic(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw DomainError("invalid strike range");
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    std::vector<double> strikes(count);
    for (std::size_t i = 0; i < count; ++i) strikes[i] = lo + static_cast<double>(i) * step;
    return StrikeChain(std::move(strikes));
}

bool StrikeChain::contains(double strike) const noexcept {
    return std::any_of(strikes_.begin(), strikes_.end(),
                       [strike](double k) { return std::fabs(k - strike) <= 1e-9 * k; });
}

StrikeChain default_strike_chain() { return StrikeChain::arithmetic(70.0, 130.0, 5.0); }

PutQuote put_price(const MarketModel& model, const Horizon& horizon, double strike) {
    if (!std::isfinite(strike) || strike <= 0.0) {
        throw DomainError("strike must be positive, got " + std::to_string(strike));
    }
    model.validate();
    horizon.validate();

    const double tau = horizon.tau();
    const double vol_sqrt_tau = model.sigma * std::sqrt(tau);
    const double d1 =
        (std::log(strike / model.s0) - (model.r - 0.5 * model.sigma * model.sigma) * tau) /
        vol_sqrt_tau;
    const double d2 = d1 - vol_sqrt_tau;
    const double premium =
        strike * std::exp(-model.r * tau) * std_normal_cdf(d1) - model.s0 * std_normal_cdf(d2);
    return {strike, std::max(premium, 0.0), tau};
}

std::vector<PutQuote> price_chain(const MarketModel& model, const Horizon& horizon,
                                  const StrikeChain& chain) {
    std::vector<PutQuote> quotes;
    quotes.reserve(chain.size());
    for (double k : chain.strikes()) quotes.push_back(put_price(model, horizon, k));
    return quotes;
}

} // namespace putvar
