#include <benchmark/benchmark.h>

#include "crosscalc/calculus.hpp"
#include "crosscalc/generators.hpp"
#include "crosscalc/linalg.hpp"
#include "crosscalc/random.hpp"
#include "crosscalc/resolution.hpp"

using namespace crosscalc;

namespace {

PersistenceModule sample(std::size_t extent, std::size_t params) {
    RandomModuleParams p{4, 4};
    return random_module(Lattice::grid(std::vector<std::size_t>(params, extent)), Field(3), 42, p);
}

void BM_rank(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    Matrix m(Field(101), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m.set(r, c, static_cast<Field::Scalar>(rng.below(101)));
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank)->Arg(16)->Arg(64)->Arg(128);

void BM_t_lower(benchmark::State& state) {
    const auto m = sample(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(t_lower(m, 1));
}
BENCHMARK(BM_t_lower)->Arg(2)->Arg(4)->Arg(8);

void BM_gamma_upper(benchmark::State& state) {
    const auto m = sample(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(gamma_upper(m, 1));
}
BENCHMARK(BM_gamma_upper)->Arg(2)->Arg(4)->Arg(8);

void BM_predicates_fast(benchmark::State& state) {
    const auto m = sample(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(min_cross_degree(m) + min_cross_codegree(m));
}
BENCHMARK(BM_predicates_fast)->Arg(2)->Arg(4);

void BM_predicates_brute_force(benchmark::State& state) {
    const auto m = sample(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(min_cross_degree(m, PredicatePath::brute_force) +
                                 min_cross_codegree(m, PredicatePath::brute_force));
}
BENCHMARK(BM_predicates_brute_force)->Arg(2)->Arg(4);

void BM_betti(benchmark::State& state) {
    const auto m = sample(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(betti(m));
}
BENCHMARK(BM_betti)->Arg(1)->Arg(2)->Arg(3);

void BM_image_h1(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto img = random_peaked_image(n, n, 2, 2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(image_bifiltration_homology(img, 1, Field(2)));
}
BENCHMARK(BM_image_h1)->Arg(5)->Arg(10)->Arg(20);

}  // namespace
BENCHMARK_MAIN();
