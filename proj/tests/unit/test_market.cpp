#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "putvar/errors.hpp"
#include "putvar/market.hpp"
#include "putvar/random.hpp"

using namespace putvar;

TEST(MarketModel, Validation) {
    EXPECT_NO_THROW(MarketModel{}.validate());
    EXPECT_THROW((MarketModel{0.0, 0.1, 0.15, 0.05}.validate()), DomainError);
    EXPECT_THROW((MarketModel{100, 0.1, 0.0, 0.05}.validate()), DomainError);
    EXPECT_THROW((MarketModel{100, std::numeric_limits<double>::infinity(), 0.15, 0.05}
                      .validate()),
                 DomainError);
    EXPECT_THROW((MarketModel{100, 0.1, 0.15, std::nan("")}.validate()), DomainError);
    EXPECT_DOUBLE_EQ(MarketModel{}.log_drift(), 0.1 - 0.5 * 0.0225);
}

TEST(Horizon, ValidationAndYearFractions) {
    const Horizon h{35, 40, 365};
    EXPECT_NO_THROW(h.validate());
    EXPECT_DOUBLE_EQ(h.tau(), 35.0 / 365.0);
    EXPECT_DOUBLE_EQ(h.maturity(), 40.0 / 365.0);
    EXPECT_DOUBLE_EQ(h.gap(), 5.0 / 365.0);
    EXPECT_THROW((Horizon{40, 40, 365}.validate()), DomainError);
    EXPECT_THROW((Horizon{0, 5, 365}.validate()), DomainError);
    EXPECT_THROW((Horizon{35, 40, 300}.validate()), DomainError);
    for (int d : {250, 252, 360, 365}) EXPECT_TRUE(is_supported_day_count(d));
    EXPECT_FALSE(is_supported_day_count(366));
}

TEST(TerminalPair, IncrementsMapExactly) {
    const MarketModel m{};
    const Horizon h{};
    const auto p = terminal_pair_from_increments(m, h, 0.02, -0.01);
    EXPECT_NEAR(p.s_tau, 100.0 * std::exp(m.log_drift() * h.tau() + 0.15 * 0.02), 1e-12);
    EXPECT_NEAR(p.s_T, 100.0 * std::exp(m.log_drift() * h.maturity() + 0.15 * 0.01), 1e-12);
}

TEST(TerminalPair, SampledLogReturnsHaveLognormalMoments) {
    const MarketModel m{100, 0.1, 0.3, 0.05};
    const Horizon h{30, 60, 360};
    const RandomStream s{77, 1};
    constexpr int n = 100'000;
    double mt = 0, vt = 0, mT = 0, vT = 0, cov = 0;
    for (int i = 0; i < n; ++i) {
        const auto p = sample_terminal_pair(m, h, s, i);
        ASSERT_GT(p.s_tau, 0.0);
        ASSERT_GT(p.s_T, 0.0);
        const double a = std::log(p.s_tau / m.s0) - m.log_drift() * h.tau();
        const double b = std::log(p.s_T / m.s0) - m.log_drift() * h.maturity();
        mt += a;
        vt += a * a;
        mT += b;
        vT += b * b;
        cov += a * b;
    }
    const double s2 = m.sigma * m.sigma;
    EXPECT_NEAR(mt / n, 0.0, 5 * std::sqrt(s2 * h.tau() / n));
    EXPECT_NEAR(mT / n, 0.0, 5 * std::sqrt(s2 * h.maturity() / n));
    EXPECT_NEAR(vt / n, s2 * h.tau(), 0.02 * s2 * h.tau());
    EXPECT_NEAR(vT / n, s2 * h.maturity(), 0.02 * s2 * h.maturity());
    // Brownian increments: Cov(B_tau, B_T) = tau.
    EXPECT_NEAR(cov / n, s2 * h.tau(), 0.03 * s2 * h.tau());
}
