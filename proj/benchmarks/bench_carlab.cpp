#include <benchmark/benchmark.h>

#include <random>

#include "carlab/instances.hpp"
#include "carlab/modular_lab.hpp"
#include "carlab/vn_alg.hpp"

namespace {

using namespace carlab;

ComplexVector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

void BM_PiA(benchmark::State& state) {
  const Index dim = state.range(0);
  const Instance inst = random_generic_instance(dim, 1);
  const FockSpace fock(inst.p);
  std::mt19937_64 rng(2);
  const ComplexVector f = random_vector(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fock.pi_a(f));
  state.counters["fock_dim"] = static_cast<double>(fock.fock_dim());
}
BENCHMARK(BM_PiA)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_VacuumExpansion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = random_generic_instance(12, 3);
  const FockSpace fock(inst.p);
  std::mt19937_64 rng(4);
  std::vector<ComplexVector> fs;
  for (int k = 0; k < n; ++k) fs.push_back(random_vector(12, rng));
  for (auto _ : state) benchmark::DoNotOptimize(vacuum_expansion(fs, fock));
}
BENCHMARK(BM_VacuumExpansion)->DenseRange(2, 6, 2);

void BM_Commutant(benchmark::State& state) {
  const Instance inst = random_generic_instance(state.range(0), 5);
  const FockSpace fock(inst.p);
  const OperatorAlgebra m = local_algebra(inst.q.subspace(), fock);
  for (auto _ : state) benchmark::DoNotOptimize(commutant(m).dim());
  state.counters["fock_dim"] = static_cast<double>(fock.fock_dim());
}
BENCHMARK(BM_Commutant)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Tomita(benchmark::State& state) {
  const Instance inst = random_generic_instance(state.range(0), 6);
  const FockSpace fock(inst.p);
  for (auto _ : state) benchmark::DoNotOptimize(tomita_S(inst.p, inst.q, fock).min_delta_eigenvalue);
}
BENCHMARK(BM_Tomita)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TwistedDuality(benchmark::State& state) {
  const Instance inst = random_generic_instance(state.range(0), 7);
  const FockSpace fock(inst.p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_twisted_duality(inst.q.subspace(), fock, inst.id).verdict);
  }
}
BENCHMARK(BM_TwistedDuality)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
