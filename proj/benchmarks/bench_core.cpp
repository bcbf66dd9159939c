#include <benchmark/benchmark.h>

#include "efimovkit/dipole_ladder.hpp"
#include "efimovkit/fitter.hpp"
#include "efimovkit/numkit.hpp"
#include "efimovkit/profiles.hpp"
#include "efimovkit/twobody.hpp"

using namespace efimovkit;

static void BM_LogGamma(benchmark::State& state) {
    numkit::ComplexValue z(0.3, -1.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(numkit::log_gamma(z));
        z += numkit::ComplexValue(1e-9, 0.0);
    }
}
BENCHMARK(BM_LogGamma);

static void BM_BuildLadder(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dipole::build_ladder(1.0, state.range(0)));
}
BENCHMARK(BM_BuildLadder)->Arg(5)->Arg(100);

static void BM_TuneScatteringLength(benchmark::State& state) {
    const twobody::SquareWell templ(1.0, 100.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(twobody::tune_to_scattering_length(templ, -2500.0, 1));
}
BENCHMARK(BM_TuneScatteringLength);

static void BM_FanoFit(benchmark::State& state) {
    const auto grid = profiles::linear_grid(0.5, 3.5, static_cast<std::size_t>(state.range(0)));
    const auto curve = profiles::synthesize(profiles::FanoParameters{1.63, 0.25, 4.0, 1.0}, grid, 0.01, 7);
    for (auto _ : state) benchmark::DoNotOptimize(fit::fit(curve, fit::Model::fano));
}
BENCHMARK(BM_FanoFit)->Arg(200)->Arg(2000);

BENCHMARK_MAIN();
