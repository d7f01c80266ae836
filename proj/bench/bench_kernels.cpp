#include <benchmark/benchmark.h>

#include "pblab/coherent.hpp"
#include "pblab/kernels.hpp"
#include "pblab/models.hpp"

using namespace pblab;

static void BM_Overlap(benchmark::State& st, Exec ex) {
    auto s = shifted_model(0.5, 0.3, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(overlap_matrix(s.psi, s.phi, ex));
}
BENCHMARK_CAPTURE(BM_Overlap, Serial, Exec::Serial)->Arg(96)->Arg(192);
BENCHMARK_CAPTURE(BM_Overlap, Parallel, Exec::Parallel)->Arg(96)->Arg(192);

static void BM_Resolution(benchmark::State& st, Exec ex) {
    auto s = shifted_model(CNum(0.4, 0.3), CNum(0.4, -0.3), 96);
    CMat V = resolution_test_vectors(96);
    Exec saved = default_exec();
    set_default_exec(ex);
    for (auto _ : st) benchmark::DoNotOptimize(resolution_matrix(s, {}, V, V).max_deviation);
    set_default_exec(saved);
}
BENCHMARK_CAPTURE(BM_Resolution, Serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Resolution, Parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
