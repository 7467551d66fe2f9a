#include <benchmark/benchmark.h>

#include <string>

#include "rktree/elemdiff.hpp"
#include "rktree/integrate.hpp"
#include "rktree/series.hpp"
#include "rktree/superconv.hpp"
#include "rktree/tableau.hpp"
#include "rktree/tree.hpp"
#include "rktree/weights.hpp"

using namespace rktree;

namespace {

std::string fixture(const std::string& name) {
    return std::string(RKTREE_FIXTURES_DIR) + "/" + name;
}

void bm_enumerate_trees(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto levels = enumerate_trees(order);
        benchmark::DoNotOptimize(levels);
    }
}
BENCHMARK(bm_enumerate_trees)->Arg(8)->Arg(10);

void bm_phi_order8_sweep(benchmark::State& state) {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    const auto levels = enumerate_trees(8);
    for (auto _ : state) {
        ElementaryWeights ew(s6);  // cold cache, like one check-order run
        Rational acc = 0;
        for (const auto& t : levels[8]) acc += ew.phi(t);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(bm_phi_order8_sweep);

void bm_classical_order(benchmark::State& state) {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    for (auto _ : state) {
        ClassicalOrderReport rep = classical_order(s6, 6);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(bm_classical_order);

void bm_elemdiff_order6(benchmark::State& state) {
    PolynomialMap f = load_problem_file(fixture("quadratic2d.json"));
    const auto levels = enumerate_trees(6);
    const RatVec y{Rational(1, 2), Rational(1, 3)};
    for (auto _ : state) {
        ElementaryDifferentials ed(f);
        RatVec acc(2, Rational(0));
        for (const auto& t : levels[6]) {
            RatVec v = ed.eval(t, y);
            for (size_t i = 0; i < 2; ++i) acc[i] += v[i];
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(bm_elemdiff_order6);

void bm_order_residual_j6(benchmark::State& state) {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    for (auto _ : state) {
        RatVec r = order_residual(6, s6, f, f.y0);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_order_residual_j6);

void bm_dependency_kernel_j5(benchmark::State& state) {
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    auto samples = draw_samples(2, 20, 42);
    for (auto _ : state) {
        DependencyReport dep = dependency_kernel(5, f, samples);
        benchmark::DoNotOptimize(dep);
    }
}
BENCHMARK(bm_dependency_kernel_j5);

void bm_effective_order(benchmark::State& state) {
    Tableau s6 = load_tableau_file(fixture("butcher_s6.json"));
    PolynomialMap f = load_problem_file(fixture("scalar_riccati_autonomized.json"));
    for (auto _ : state) {
        OrderReport rep = effective_order(s6, f, 6, 20, 42);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(bm_effective_order);

void bm_integrate_rk4(benchmark::State& state) {
    Tableau rk4 = load_tableau_file(fixture("rk4.json"));
    PolynomialMap f = load_problem_file(fixture("riccati.json"));
    for (auto _ : state) {
        FloatVec y = integrate(rk4, f, {0.5}, 1.0, 1000);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(bm_integrate_rk4);

}  // namespace

BENCHMARK_MAIN();
