// Copyright 2026 The nhqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP average fidelity, plus the two right-hand sides.

#include <random>

#include <benchmark/benchmark.h>

#include "nhqc/common.hpp"
#include "nhqc/gates.hpp"

namespace {

using namespace nhqc;

const NamedGate kGate = named_gate(GateId::kT);
const PulseSchedule& schedule() {
  static const PulseSchedule s = synth_circular(kGate.spec, 1.0, units::mhz_to_rad_per_s(10.0));
  return s;
}
const FidelityGrid kGrid{11, 11, kDefaultSteps};

void BM_AverageFidelitySerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(average_fidelity_serial(
        kGate, schedule(), {}, DecoherenceRates::superconducting(), kGrid));
  }
  state.SetItemsProcessed(state.iterations() * kGrid.n_theta * kGrid.n_phi);
}
BENCHMARK(BM_AverageFidelitySerial)->Unit(benchmark::kMillisecond);

void BM_AverageFidelityParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        average_fidelity(kGate, schedule(), {}, DecoherenceRates::superconducting(), kGrid));
  }
  state.SetItemsProcessed(state.iterations() * kGrid.n_theta * kGrid.n_phi);
}
BENCHMARK(BM_AverageFidelityParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

Matrix4 sample_rho() {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  Matrix4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = {n(rng), n(rng)};
  Matrix4 rho = a * a.adjoint();
  return rho / rho.trace();
}

void BM_DenseRhs(benchmark::State& state) {
  const Matrix4 rho = sample_rho();
  const Matrix4 h = hamiltonian_at(0.3 * schedule().tau, schedule());
  const auto r = DecoherenceRates::superconducting();
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(rho, h, r));
}
BENCHMARK(BM_DenseRhs);

void BM_KernelRhs(benchmark::State& state) {
  const Matrix4 rho = sample_rho();
  const Matrix4 h = hamiltonian_at(0.3 * schedule().tau, schedule());
  const LindbladKernel kernel(DecoherenceRates::superconducting());
  Matrix4 out;
  for (auto _ : state) {
    kernel.apply(rho, h, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_KernelRhs);

}  // namespace

BENCHMARK_MAIN();
