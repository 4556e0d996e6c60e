#include <staeckel/actions.hpp>
#include <staeckel/critical.hpp>
#include <staeckel/dynamics.hpp>
#include <staeckel/grassmann.hpp>
#include <staeckel/so4.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace staeckel;

namespace {

const SystemSpec kEll = SystemSpec::ellipsoidal(1, 2, 5, 8);

void BM_lp_bracket(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto [f, g] = build_integrals(kEll);
    const Bivector L = random_leaf_point(rng);
    for (auto _ : state) benchmark::DoNotOptimize(lp_bracket(f, g, L));
}
BENCHMARK(BM_lp_bracket);

void BM_integral_values(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const Bivector L = random_leaf_point(rng);
    for (auto _ : state) benchmark::DoNotOptimize(integral_values(L, kEll));
}
BENCHMARK(BM_integral_values);

void BM_classify(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const Bivector L = random_leaf_point(rng);
    for (auto _ : state) benchmark::DoNotOptimize(classify(L, kEll));
}
BENCHMARK(BM_classify);

void BM_bifurcation_set(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bifurcation_set(kEll));
}
BENCHMARK(BM_bifurcation_set);

void BM_action_triple(benchmark::State& state) {
    const IntegralValues v{6.5, 10.0};
    for (auto _ : state) benchmark::DoNotOptimize(action_triple(v, kEll));
}
BENCHMARK(BM_action_triple);

void BM_plane_from_bivector(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const CotangentPoint p = random_cotangent_point(rng);
    const Bivector L = plucker(OrientedPlane{p.x(), p.y()});
    for (auto _ : state) benchmark::DoNotOptimize(plane_from_bivector(L));
}
BENCHMARK(BM_plane_from_bivector);

void BM_integrate_geodesic(benchmark::State& state) {
    std::mt19937_64 rng(5);
    const CotangentPoint p0 = random_cotangent_point(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_geodesic(p0, 10.0, 1e-10, kEll));
}
BENCHMARK(BM_integrate_geodesic);

}  // namespace

BENCHMARK_MAIN();
