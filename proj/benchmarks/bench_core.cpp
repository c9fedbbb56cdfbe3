#include <benchmark/benchmark.h>

#include "ergolab/localopt.hpp"
#include "ergolab/protocol.hpp"

using namespace ergolab;

namespace {

DensityMatrix random_density(int dim, std::uint64_t seed) {
    Rng rng(Rng::derive({seed, 0xBE7CULL}));
    const Matrix u = haar_random_unitary(dim, rng);
    RealVector pops(dim);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double g = rng.gaussian();
        pops(i) = g * g;
        total += pops(i);
    }
    pops /= total;
    return DensityMatrix::unchecked(u * pops.asDiagonal() * u.adjoint());
}

Hamiltonian random_ham(int dim, std::uint64_t seed) {
    Rng rng(Rng::derive({seed, 0xBE71ULL}));
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    return Hamiltonian(0.5 * (g + g.adjoint()));
}

void bm_von_neumann_entropy(benchmark::State& state) {
    const DensityMatrix rho = random_density(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(von_neumann_entropy(rho));
    }
}
BENCHMARK(bm_von_neumann_entropy)->Arg(4)->Arg(16)->Arg(64);

void bm_partial_trace(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DensityMatrix rho = random_density(d * d, 2);
    rho.dims = Bipartition{d, d};
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, Subsystem::A));
    }
}
BENCHMARK(bm_partial_trace)->Arg(2)->Arg(4)->Arg(8);

void bm_passive_transform(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const DensityMatrix rho = random_density(d, 3);
    const Hamiltonian h = random_ham(d, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(passive_transform(rho, h));
    }
}
BENCHMARK(bm_passive_transform)->Arg(4)->Arg(16)->Arg(64);

void bm_solve_beta(benchmark::State& state) {
    const Hamiltonian h = random_ham(static_cast<int>(state.range(0)), 5);
    const double s_target = thermal_entropy(h, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_beta(h, s_target));
    }
}
BENCHMARK(bm_solve_beta)->Arg(2)->Arg(8)->Arg(32);

void bm_minimize_obs_entropy(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DensityMatrix rho = random_density(d * d, 6);
    rho.dims = Bipartition{d, d};
    OptimizerConfig config;
    config.restarts = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_obs_entropy_product(rho, config));
    }
}
BENCHMARK(bm_minimize_obs_entropy)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_extraction_unitary(benchmark::State& state) {
    const int copies = static_cast<int>(state.range(0));
    const Hamiltonian h = random_ham(2, 7);
    OutcomeDistribution p;
    p.probabilities = RealVector(2);
    p.probabilities << 0.3, 0.7;
    p.measurement = Measurement::computational(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extraction_unitary(p, h, copies));
    }
}
BENCHMARK(bm_extraction_unitary)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void bm_simulate_extraction(benchmark::State& state) {
    const DensityMatrix rho = random_density(2, 8);
    const Hamiltonian h = random_ham(2, 9);
    ProtocolConfig config;
    config.copies = static_cast<int>(state.range(0));
    config.trials = 100;
    config.measurement = Measurement::computational(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_extraction(rho, h, config));
    }
}
BENCHMARK(bm_simulate_extraction)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

void bm_convergence_study(benchmark::State& state) {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = validate_pure(bell, Bipartition{2, 2}).projector();
    Matrix h1 = Matrix::Zero(2, 2);
    h1(1, 1) = 1.0;
    const Matrix eye = Matrix::Identity(2, 2);
    const Hamiltonian h(kron(h1, eye) + kron(eye, h1));
    const Measurement comp4 = Measurement::computational(4);
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(convergence_study(rho, h, comp4, n_max));
    }
}
BENCHMARK(bm_convergence_study)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
