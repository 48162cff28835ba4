#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "putvar/config.hpp"
#include "putvar/errors.hpp"
#include "putvar/presets.hpp"

using namespace putvar;

namespace {

RunConfig parse(const std::string& text, RunConfig base = {}) {
    std::istringstream in(text);
    return parse_config(in, base);
}

} // namespace

TEST(ParameterRange, CountsMatchTheGrids) {
    const ParameterTable t;
    EXPECT_EQ(t.mu.count(), 21u);
    EXPECT_EQ(t.sigma2.count(), 210u);
    EXPECT_EQ(t.tau_days.count(), 40u);
    EXPECT_EQ(t.gap_days.count(), 40u);
    EXPECT_EQ(t.budget.count(), 100u);
    EXPECT_EQ(t.alpha.count(), 9u);
    EXPECT_EQ(t.rate.count(), 1501u);
    EXPECT_NEAR(t.rate.at(1500), 0.16, 1e-12);
}

TEST(RunConfig, StandardScenario) {
    const Scenario s = RunConfig{}.standard();
    EXPECT_EQ(s.market.s0, 100.0);
    EXPECT_EQ(s.market.mu, 0.1);
    EXPECT_NEAR(s.market.sigma, 0.15, 1e-15);
    EXPECT_EQ(s.market.r, 0.05);
    EXPECT_EQ(s.horizon.tau_days, 35);
    EXPECT_EQ(s.horizon.t_days, 40);
    EXPECT_EQ(s.horizon.days_per_year, 365);
    EXPECT_EQ(s.risk.alpha, 0.05);
    EXPECT_EQ(s.risk.budget, 0.35);
}

TEST(ParseConfig, ScalarsRangesAndComments) {
    const auto c = parse(R"(# desk settings
s0 = 50
mu = 0.02          # standard only
sigma = 0.2
tau = 1 20 1 10
t_minus_tau = 3
days_per_year = 252
strikes = 40:60:5
n_samples = 1000
seed = 7
relax_budget = yes
strike = 50
ratio = 0.5
)");
    EXPECT_EQ(c.s0, 50.0);
    EXPECT_EQ(c.table.mu.standard, 0.02);
    EXPECT_EQ(c.table.mu.lo, -0.1); // untouched range
    EXPECT_NEAR(c.table.sigma2.standard, 0.04, 1e-15);
    EXPECT_EQ(c.table.tau_days.hi, 20.0);
    EXPECT_EQ(c.table.tau_days.standard, 10.0);
    EXPECT_EQ(c.standard().horizon.t_days, 13);
    EXPECT_EQ(c.days_per_year, 252);
    EXPECT_EQ(c.chain.size(), 5u);
    EXPECT_EQ(c.n_samples, 1000);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_TRUE(c.relax_budget);
    EXPECT_EQ(*c.plan.strike, 50.0);
    EXPECT_EQ(*c.plan.ratio, 0.5);
}

TEST(ParseConfig, LayersOverBase) {
    RunConfig base;
    base.seed = 99;
    const auto c = parse("n_trials = 10\n", base);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.n_trials, 10);
}

TEST(ParseConfig, Errors) {
    EXPECT_THROW(parse("bogus = 1\n"), DomainError);
    EXPECT_THROW(parse("s0 100\n"), DomainError);
    EXPECT_THROW(parse("n_samples = 1.5\n"), DomainError);
    EXPECT_THROW(parse("mu = 1 2\n"), DomainError);
    EXPECT_THROW(parse("relax_budget = maybe\n"), DomainError);
    EXPECT_THROW(parse("strikes = 100, 90\n"), DomainError);
    EXPECT_THROW(load_config_file("/nonexistent/putvar.cfg"), DomainError);
}

TEST(RunConfig, ValidationCatchesBadValues) {
    RunConfig c;
    c.table.sigma2.standard = 0.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.days_per_year = 300;
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.beta = 1.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.plan.ratio = 2.0;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(StrikeList, Forms) {
    EXPECT_EQ(parse_strike_list("70:130:5").size(), 13u);
    const auto c = parse_strike_list("90, 100 110");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[2], 110.0);
    EXPECT_THROW(parse_strike_list(""), DomainError);
}

TEST(Presets, ApplyAndLookup) {
    RunConfig c;
    find_preset("example").apply(c);
    EXPECT_EQ(c.standard().horizon.tau_days, 30);
    EXPECT_EQ(c.standard().horizon.t_days, 35);
    EXPECT_EQ(c.standard().horizon.days_per_year, 365);

    RunConfig k;
    find_preset("example-k105").apply(k);
    EXPECT_EQ(*k.plan.strike, 105.0);
    EXPECT_EQ(*k.plan.var_level, 6.5666);

    RunConfig relaxed;
    find_preset("example-relaxed").apply(relaxed);
    EXPECT_TRUE(relaxed.relax_budget);

    EXPECT_THROW(find_preset("nope"), DomainError);
    EXPECT_GE(presets().size(), 4u);
}

TEST(ConfigJson, EchoesParameters) {
    const auto j = to_json(RunConfig{});
    EXPECT_EQ(j.at("seed"), 12345);
    EXPECT_EQ(j.at("n_samples"), 200000);
    const auto s = to_json(RunConfig{}.standard());
    EXPECT_DOUBLE_EQ(s.at("mu").get<double>(), 0.1);
    EXPECT_EQ(s.at("tau_days"), 35);
}
