#include <cmath>

#include <gtest/gtest.h>

#include "putvar/errors.hpp"
#include "putvar/option_pricing.hpp"
#include "putvar/strategy_optimizer.hpp"
#include "putvar/var_engine.hpp"

using namespace putvar;

namespace {

const MarketModel kModel{};
const Horizon kStandard{35, 40, 365};
const Horizon kExample{30, 35, 365};

} // namespace

TEST(AbrwVar, UnhedgedIsLognormalVar) {
    const double t = kStandard.maturity();
    const double theta = -1.6448536269514727149;
    const double expected = 100 * std::exp(0.05 * t) -
                            100 * std::exp(kModel.log_drift() * t + theta * 0.15 * std::sqrt(t));
    EXPECT_NEAR(abrw_var(kModel, kStandard, 100, 0.0, 0.05), expected, 1e-10);
}

TEST(AbrwVar, WorkedExampleValues) {
    const double p100 = put_price(kModel, kExample, 100).premium;
    EXPECT_NEAR(abrw_var(kModel, kExample, 100, 0.35 / p100, 0.05), 5.8636092416037, 1e-9);
    EXPECT_NEAR(abrw_var(kModel, kExample, 105, 0.071293, 0.05), 6.5666, 5e-5);
    EXPECT_NEAR(abrw_var(kModel, kStandard, 100, 0.231, 0.05), 6.2483959122026, 1e-9);
}

TEST(AbrwVar, PlugInArithmetic) {
    const MarketModel m{100, 0.08, 0.2, 0.04};
    const Horizon h{20, 30, 360};
    const double k = 95, ratio = 0.4, alpha = 0.1;
    const double p = put_price(m, h, k).premium;
    const double t = h.maturity();
    const double theta = -1.2815515655446004;
    const double expected =
        (100 + ratio * p) * std::exp(0.04 * t) -
        ((1 - ratio) * 100 * std::exp((0.08 - 0.02) * t + theta * 0.2 * std::sqrt(t)) +
         ratio * k * std::exp(0.04 * h.gap()));
    EXPECT_NEAR(abrw_var(m, h, k, ratio, alpha), expected, 1e-10);
    EXPECT_DOUBLE_EQ(abrw_var(m, h, k, ratio, alpha), abrw_var(m, h, k, ratio, p, alpha));
}

TEST(OptimizeAbrw, WorkedExample) {
    const auto r = optimize_abrw(kModel, kExample, default_strike_chain(), RiskBudget{0.05, 0.35});
    EXPECT_EQ(r.strike, 100.0);
    EXPECT_NEAR(r.ratio, 0.231068825779, 1e-9);
    EXPECT_NEAR(r.var_value, 5.8636092416037, 1e-9);
    EXPECT_NEAR(r.spend(), 0.35, 1e-9);
    EXPECT_EQ(r.method, Method::Abrw);
    EXPECT_EQ(r.feasible_strikes, 7);
}

TEST(OptimizeAbrw, StandardHorizon) {
    const auto r = optimize_abrw(kModel, kStandard, default_strike_chain(), RiskBudget{0.05, 0.35});
    EXPECT_EQ(r.strike, 100.0);
    EXPECT_NEAR(r.ratio, 0.216163576721, 1e-9);
    EXPECT_NEAR(r.var_value, 6.3282583681052, 1e-9);
}

TEST(OptimizeAbrw, BudgetIdentityAcrossBudgets) {
    for (double c = 0.05; c < 5.0; c += 0.25) {
        const auto r = optimize_abrw(kModel, kStandard, default_strike_chain(), RiskBudget{0.05, c});
        EXPECT_NEAR(r.ratio * r.premium, c, 1e-9) << "C = " << c;
        EXPECT_LE(r.ratio, 1.0);
    }
}

TEST(OptimizeAbrw, RelaxedBudgetReachesFullHedge) {
    const auto r = optimize_abrw(kModel, kExample, default_strike_chain(), RiskBudget{0.05, 0.35},
                                 AbrwOptions{true});
    EXPECT_EQ(r.strike, 95.0);
    EXPECT_EQ(r.ratio, 1.0);
    EXPECT_NEAR(r.var_value, 5.6116, 5e-5);
    EXPECT_LE(r.spend(), 0.35);
}

TEST(OptimizeAbrw, SingleStrikeAndInfeasibility) {
    const StrikeChain only({110});
    const double p = put_price(kModel, kStandard, 110).premium;
    const auto r = optimize_abrw(kModel, kStandard, only, RiskBudget{0.05, 1.0});
    EXPECT_EQ(r.strike, 110.0);
    EXPECT_NEAR(r.ratio, 1.0 / p, 1e-12);

    EXPECT_THROW(optimize_abrw(kModel, kStandard, default_strike_chain(), RiskBudget{0.05, 100}),
                 InfeasibleError);
    EXPECT_THROW(optimize_abrw(kModel, kStandard, default_strike_chain(), RiskBudget{0.05, 0.0}),
                 DomainError);
}

namespace {

OptimizationResult small_minvar(const MarketModel& m, const Horizon& h, const StrikeChain& chain,
                                double budget, std::uint64_t seed = 12345) {
    return optimize_minvar(m, h, chain, RiskBudget{0.05, budget}, VarQuery{0.05, 1e-3, 20'000},
                           RandomStream{seed, 1});
}

} // namespace

TEST(OptimizeMinVar, DeterministicAndWithinBudget) {
    const StrikeChain chain({95, 100, 105});
    const auto a = small_minvar(kModel, kStandard, chain, 0.35);
    const auto b = small_minvar(kModel, kStandard, chain, 0.35);
    EXPECT_EQ(a.strike, b.strike);
    EXPECT_EQ(a.ratio, b.ratio);
    EXPECT_EQ(a.var_value, b.var_value);
    EXPECT_EQ(a.method, Method::MinVar);
    EXPECT_LE(a.spend(), 0.35 + 1e-9);
    EXPECT_EQ(a.feasible_strikes, 3);
}

TEST(OptimizeMinVar, NoGridPointBeatsTheOptimum) {
    const StrikeChain chain({95, 100, 105});
    const double budget = 0.35;
    const VarQuery q{0.05, 1e-3, 20'000};
    const RandomStream s{12345, 1};
    const auto best = small_minvar(kModel, kStandard, chain, budget);
    const VarSolver solver(kModel, kStandard, q, s);
    for (double k : chain.strikes()) {
        const double p = put_price(kModel, kStandard, k).premium;
        const double ceiling = std::min(1.0, budget / p);
        for (double h = 0.0; h <= ceiling; h += 0.01) {
            const double v = solver.solve(make_plan(kModel, kStandard, k, h));
            EXPECT_GE(v, best.var_value - 2 * q.v_tolerance) << "K=" << k << " h=" << h;
        }
    }
}

TEST(OptimizeMinVar, DominatesNoHedge) {
    const StrikeChain chain({90, 100, 110});
    const auto r = small_minvar(kModel, kStandard, chain, 0.35);
    const double unhedged = solve_var(kModel, kStandard, make_plan(kModel, kStandard, 100, 0.0),
                                      VarQuery{0.05, 1e-3, 20'000}, RandomStream{12345, 1});
    EXPECT_LE(r.var_value, unhedged + 1e-3);
}

TEST(OptimizeMinVar, LargeBudgetNeedNotBeSpent) {
    // Every full hedge costs less than the budget, so the constraint is slack.
    const auto r = small_minvar(kModel, kStandard, StrikeChain({95, 100, 105}), 30.0);
    EXPECT_LT(r.spend(), 30.0);
    EXPECT_LE(r.ratio, 1.0);
}

TEST(OptimizeMinVar, RisklessGainIsNotHedged) {
    const MarketModel calm{100, 0.1, 1e-4, 0.05};
    const auto r = small_minvar(calm, kStandard, StrikeChain({95, 100, 105}), 0.35);
    EXPECT_EQ(r.ratio, 0.0);
}
