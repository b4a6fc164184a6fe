// Micro benchmarks for the hot paths: dense solves, realizability
// certificates, root finding, boundary tracing, and region sampling.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "perron/circulant.hpp"
#include "perron/karpelevic.hpp"
#include "perron/numerics.hpp"
#include "perron/region4.hpp"
#include "perron/similarity.hpp"

namespace {

using namespace perron;

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
    // diagonal dominance keeps every draw comfortably invertible
    for (std::size_t i = 0; i < n; ++i) m(i, i) += Complex(4.0, 0.0);
    return m;
}

ComplexVector realizable_spectrum(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ComplexVector c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = Complex(u(rng), 0.0);
    return dft_matrix(n) * c;
}

void bm_lu_solve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = random_matrix(n, 11);
    const ComplexMatrix b = random_matrix(n, 12);
    for (auto _ : state) benchmark::DoNotOptimize(lu_solve(a, b));
}
BENCHMARK(bm_lu_solve)->Arg(16)->Arg(64);

void bm_inverse(benchmark::State& state) {
    const ComplexMatrix a = random_matrix(32, 13);
    for (auto _ : state) benchmark::DoNotOptimize(inverse(a));
}
BENCHMARK(bm_inverse);

void bm_circulant_realizable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComplexVector x = realizable_spectrum(n, 21);
    for (auto _ : state) benchmark::DoNotOptimize(circulant_realizable(x));
}
BENCHMARK(bm_circulant_realizable)->Arg(12)->Arg(32)->Arg(64);

void bm_block_circulant(benchmark::State& state) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ComplexVector c(48);
    for (std::size_t i = 0; i < 48; ++i) c[i] = Complex(u(rng), 0.0);
    const ComplexVector x = kron(dft_matrix(6), dft_matrix(8)) * c;
    for (auto _ : state) benchmark::DoNotOptimize(block_circulant_realizable(x, 6, 8));
}
BENCHMARK(bm_block_circulant);

void bm_arc_roots(benchmark::State& state) {
    const ItoArc arc = classify_arc(7, make_fraction(1, 6), make_fraction(1, 7));
    const ItoPolynomial p = ito_polynomial(arc, 0.37);
    for (auto _ : state) benchmark::DoNotOptimize(roots(p));
}
BENCHMARK(bm_arc_roots);

void bm_theta_boundary(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(theta_boundary(4, 64));
}
BENCHMARK(bm_theta_boundary);

void bm_region_sweep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sample_typeI_region(8, 6));
}
BENCHMARK(bm_region_sweep);

void bm_klein_matrix(benchmark::State& state) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ComplexVector c(64);
    for (std::size_t i = 0; i < 64; ++i) c[i] = Complex(u(rng), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(klein_matrix(c, 6));
}
BENCHMARK(bm_klein_matrix);

void bm_halfspace_membership(benchmark::State& state) {
    const PerronSimilarity s = dft_similarity(8);
    const HalfSpaceSystem hs = halfspace_description(s);
    const ComplexVector x = realizable_spectrum(8, 24);
    for (auto _ : state) benchmark::DoNotOptimize(in_halfspace_cone(hs, x, 1e-9));
}
BENCHMARK(bm_halfspace_membership);

}  // namespace

BENCHMARK_MAIN();
