#include <memory>

#include <benchmark/benchmark.h>

#include "wqed/sector_hamiltonian.hpp"
#include "wqed/spectra.hpp"

using namespace wqed;

namespace {

SectorHamiltonian make_system(int n) {
    const auto c = EffectiveCouplings::make(Bandgap::Lower, 1.5, 0.2);
    const auto cm = build_coupling_matrix(c, n, Boundary::OBC);
    auto basis = std::make_shared<const SectorBasis>(n, n / 2);
    return build_sector_hamiltonian(cm, basis, M_PI / 4.0);
}

void bench_coupling_matrix(benchmark::State& state) {
    const auto c = EffectiveCouplings::make(Bandgap::Lower, 2.0, 0.1);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_coupling_matrix(c, n, Boundary::PBC));
}
BENCHMARK(bench_coupling_matrix)->Arg(64)->Arg(256);

void bench_matvec(benchmark::State& state) {
    const auto h = make_system(static_cast<int>(state.range(0)));
    Eigen::VectorXd x = Eigen::VectorXd::Random(h.dim());
    Eigen::VectorXd y(h.dim());
    for (auto _ : state) {
        h.matvec(x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * h.dim());
}
BENCHMARK(bench_matvec)->Arg(12)->Arg(16)->Arg(18);

void bench_ground_state(benchmark::State& state) {
    const auto h = make_system(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(ground_states(h, 1).eigenvalues(0));
}
BENCHMARK(bench_ground_state)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
