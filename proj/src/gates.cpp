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

#include "nhqc/gates.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <fmt/format.h>
#include <omp.h>

#include "nhqc/common.hpp"

namespace nhqc {
namespace {

using namespace std::complex_literals;

constexpr NamedGate kGates[] = {
    {GateId::kT, "T", {kPi / 4.0, 0.0, 0.0}},
    {GateId::kS, "S", {kPi / 2.0, 0.0, 0.0}},
    {GateId::kNot, "NOT", {kPi, kPi / 2.0, 0.0}},
    {GateId::kHadamard, "Hadamard", {kPi, kPi / 4.0, 0.0}},
};

void require_grid(const FidelityGrid& grid) {
  if (grid.n_theta < 2 || grid.n_phi < 1) {
    throw DomainError(fmt::format("initial-state grid {}x{} is too small", grid.n_theta,
                                  grid.n_phi));
  }
}

}  // namespace

NamedGate named_gate(GateId id) {
  for (const auto& g : kGates) {
    if (g.id == id) return g;
  }
  throw DomainError("unknown gate id");
}

std::optional<NamedGate> parse_gate(std::string_view name) {
  for (const auto& g : kGates) {
    if (g.name == name) return g;
  }
  if (name == "not" || name == "X") return kGates[2];
  if (name == "H" || name == "hadamard") return kGates[3];
  return std::nullopt;
}

std::vector<NamedGate> all_named_gates() { return {std::begin(kGates), std::end(kGates)}; }

Vector4 InitialState::vector() const {
  Vector4 v = Vector4::Zero();
  v(kLevel0) = std::cos(theta0);
  v(kLevel1) = std::sin(theta0) * std::exp(1i * phi0);
  return v;
}

std::vector<InitialState> initial_state_grid(int n_theta, int n_phi) {
  require_grid({n_theta, n_phi, kDefaultSteps});
  std::vector<InitialState> states;
  states.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
  for (int i = 0; i < n_theta; ++i) {
    const double theta0 = kPi * static_cast<double>(i) / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      states.push_back({theta0, kTwoPi * static_cast<double>(j) / n_phi});
    }
  }
  return states;
}

std::pair<Vector2, Vector2> dark_bright(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::complex<double> e = std::exp(1i * phi);
  return {Vector2(c, s * e), Vector2(s, -c * e)};
}

Matrix2 target_unitary(const GateSpec& spec) {
  const auto [d, b] = dark_bright(spec.theta, spec.phi);
  return d * d.adjoint() + std::exp(1i * spec.gamma) * (b * b.adjoint());
}

Vector4 embed(const Vector2& v) {
  Vector4 out = Vector4::Zero();
  out(kLevel0) = v(0);
  out(kLevel1) = v(1);
  return out;
}

double state_fidelity(const DensityMatrix& state, const Vector4& target) {
  if (std::abs(target.norm() - 1.0) > 1e-9) {
    throw DomainError(fmt::format("target norm {} is not 1", target.norm()));
  }
  if (std::abs(target(kLevelE)) > 1e-12 || std::abs(target(kLevelH)) > 1e-12) {
    throw DomainError("target state must lie in span{|0>, |1>}");
  }
  const std::complex<double> f = target.dot(state.rho * target);
  return f.real();
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double next = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - next) + v : (v - next) + sum;
    sum = next;
  }
  return sum + comp;
}

std::vector<double> state_fidelities(const GateSpec& target, const PulseSchedule& schedule,
                                     const ErrorInjection& err, const DecoherenceRates& rates,
                                     std::span<const InitialState> states, int n_steps) {
  const HamiltonianTable table(schedule, err, n_steps);
  const LindbladKernel kernel(rates);
  const Matrix2 u = target_unitary(target);
  std::vector<double> fidelity(states.size());
  const auto count = static_cast<std::ptrdiff_t>(states.size());

  // Exceptions must not cross the OpenMP region boundary.
  std::string failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const auto& st = states[static_cast<std::size_t>(i)];
      const Vector4 psi0 = st.vector();
      const Vector4 goal = embed(u * Vector2(psi0(kLevel0), psi0(kLevel1)));
      const DensityMatrix rho = evolve_lindblad(DensityMatrix::pure(psi0), table, kernel);
      fidelity[static_cast<std::size_t>(i)] = state_fidelity(rho, goal);
    } catch (const std::exception& e) {
#pragma omp critical(nhqc_fidelity_failure)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw NumericalError(failure);
  return fidelity;
}

double average_fidelity(const NamedGate& gate, const PulseSchedule& schedule,
                        const ErrorInjection& err, const DecoherenceRates& rates,
                        const FidelityGrid& grid) {
  require_grid(grid);
  const auto states = initial_state_grid(grid.n_theta, grid.n_phi);
  const auto f = state_fidelities(gate.spec, schedule, err, rates, states, grid.n_steps);
  return compensated_sum(f) / static_cast<double>(f.size());
}

double average_fidelity_serial(const NamedGate& gate, const PulseSchedule& schedule,
                               const ErrorInjection& err, const DecoherenceRates& rates,
                               const FidelityGrid& grid) {
  require_grid(grid);
  const auto states = initial_state_grid(grid.n_theta, grid.n_phi);
  const Matrix2 u = target_unitary(gate.spec);
  std::vector<double> f;
  f.reserve(states.size());
  for (const auto& st : states) {
    const Vector4 psi0 = st.vector();
    const Vector4 goal = embed(u * Vector2(psi0(kLevel0), psi0(kLevel1)));
    const DensityMatrix rho = evolve_lindblad_reference(DensityMatrix::pure(psi0), schedule, err,
                                                        rates, grid.n_steps);
    f.push_back(state_fidelity(rho, goal));
  }
  return compensated_sum(f) / static_cast<double>(f.size());
}

}  // namespace nhqc
