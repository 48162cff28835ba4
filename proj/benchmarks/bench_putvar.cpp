#include <benchmark/benchmark.h>

#include "putvar/loss_model.hpp"
#include "putvar/normal.hpp"
#include "putvar/option_pricing.hpp"
#include "putvar/strategy_optimizer.hpp"
#include "putvar/var_engine.hpp"

using namespace putvar;

namespace {

const MarketModel kModel{};
const Horizon kHorizon{35, 40, 365};

void BM_NormalCdf(benchmark::State& state) {
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(std_normal_cdf(x));
        x = x > 3.0 ? -3.0 : x + 1e-3;
    }
}
BENCHMARK(BM_NormalCdf);

void BM_NormalQuantile(benchmark::State& state) {
    double p = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(std_normal_quantile(p));
        p = p > 0.999 ? 0.001 : p + 1e-4;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_PutPrice(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(put_price(kModel, kHorizon, 100.0));
}
BENCHMARK(BM_PutPrice);

// One pass of the conditional estimator over the fixed sample.
void BM_ExceedanceEvaluate(benchmark::State& state) {
    const ExceedanceEstimator est(kModel, kHorizon, state.range(0), RandomStream{1, 0});
    const auto plan = make_plan(kModel, kHorizon, 100, 0.231);
    for (auto _ : state) benchmark::DoNotOptimize(est.evaluate(plan, 6.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExceedanceEvaluate)->Arg(10'000)->Arg(200'000)->Unit(benchmark::kMillisecond);

void BM_DirectSimulation(benchmark::State& state) {
    const auto plan = make_plan(kModel, kHorizon, 100, 0.231);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            exceedance_prob_oracle(kModel, kHorizon, plan, 6.0, state.range(0), RandomStream{1, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DirectSimulation)->Arg(200'000)->Unit(benchmark::kMillisecond);

void BM_SolveVar(benchmark::State& state) {
    const VarSolver solver(kModel, kHorizon, VarQuery{0.05, 1e-3, state.range(0)}, RandomStream{1, 0});
    const auto plan = make_plan(kModel, kHorizon, 100, 0.231);
    for (auto _ : state) benchmark::DoNotOptimize(solver.solve(plan));
}
BENCHMARK(BM_SolveVar)->Arg(50'000)->Arg(200'000)->Unit(benchmark::kMillisecond);

void BM_OptimizeMinVarSmallChain(benchmark::State& state) {
    const StrikeChain chain({95, 100, 105});
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_minvar(kModel, kHorizon, chain, RiskBudget{0.05, 0.35},
                                                 VarQuery{0.05, 1e-3, 20'000}, RandomStream{1, 0}));
    }
}
BENCHMARK(BM_OptimizeMinVarSmallChain)->Unit(benchmark::kMillisecond);

void BM_OptimizeAbrw(benchmark::State& state) {
    const auto chain = default_strike_chain();
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_abrw(kModel, kHorizon, chain, RiskBudget{0.05, 0.35}));
    }
}
BENCHMARK(BM_OptimizeAbrw);

} // namespace

BENCHMARK_MAIN();
