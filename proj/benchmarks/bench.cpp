#include <benchmark/benchmark.h>

#include "teinv/experiment.hpp"
#include "teinv/p1.hpp"
#include "teinv/reconstruction.hpp"

namespace {

using namespace teinv;

struct Fixture {
    ManufacturedCase mc = build_case(TargetSource::F0, MeasurementKind::TimeAvgDisplacement);
    SpaceGrid grid{50};
    TimeGrid time{50, 1.0};
    MeasurementOperator op{mc.params, grid, time, mc.kernel, mc.modulation, mc.kind};
    Field profile = sample_field(grid, mc.target_profile);
};

void BM_ForwardSolve(benchmark::State& state) {
    Fixture fx;
    ForwardSolver solver(fx.mc.params, fx.grid, fx.time, fx.mc.kernel);
    for (auto _ : state) {
        auto sol = solver.solve(SourceTerm::of(fx.mc.load), SourceTerm::of(fx.mc.heat),
                                fx.mc.initial(fx.grid));
        benchmark::DoNotOptimize(sol.displacement.levels.back());
    }
}
BENCHMARK(BM_ForwardSolve);

void BM_MeasurementApply(benchmark::State& state) {
    Fixture fx;
    for (auto _ : state) {
        Field image = fx.op.apply(fx.profile);
        benchmark::DoNotOptimize(image);
    }
}
BENCHMARK(BM_MeasurementApply);

void BM_GradientEvaluation(benchmark::State& state) {
    Fixture fx;
    CostConfig cfg;
    cfg.remainder = fx.op.apply(fx.profile);
    Field f(fx.grid);
    for (auto _ : state) {
        Field g = grad_l2(f, cfg, fx.op);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_GradientEvaluation);

void BM_SobolevSolve(benchmark::State& state) {
    Fixture fx;
    const SobolevWeights w = SobolevWeights::constants(1.0, 0.01);
    const Field load = sample_field(fx.grid, [](double x) { return x * (1.0 - x); });
    for (auto _ : state) {
        Field k = grad_sobolev(load, w);
        benchmark::DoNotOptimize(k);
    }
}
BENCHMARK(BM_SobolevSolve);

void BM_BandedFactorSolve(benchmark::State& state) {
    Fixture fx;
    const BandedMatrix a =
        assemble_step_system(fx.mc.params, fx.grid, fx.time.dt(), fx.mc.kernel);
    std::vector<double> rhs(static_cast<size_t>(a.size()), 1.0);
    for (auto _ : state) {
        BandedLU lu(a);
        auto x = lu.solve(rhs);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_BandedFactorSolve);

void BM_LandweberIteration(benchmark::State& state) {
    Fixture fx;
    ForwardSolver star_solver(fx.mc.params, fx.grid, fx.time, fx.mc.kernel);
    const ForwardSolution star =
        star_solver.solve(SourceTerm::of(fx.mc.known_load), SourceTerm::of(fx.mc.known_heat),
                          fx.mc.initial(fx.grid));
    const Field remainder = compute_remainder(sample_field(fx.grid, fx.mc.exact_measurement),
                                              star, fx.mc.kind);
    ReconstructionConfig rc;
    rc.method = Method::Landweber;
    rc.alpha = 6.0;
    rc.max_iterations = 10;
    rc.initial_guess = Field(fx.grid);
    for (auto _ : state) {
        auto r = landweber(rc, remainder, fx.op);
        benchmark::DoNotOptimize(r.reconstruction);
    }
}
BENCHMARK(BM_LandweberIteration);

}  // namespace

BENCHMARK_MAIN();
