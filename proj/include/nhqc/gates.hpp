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

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nhqc/dynamics.hpp"
#include "nhqc/schemes.hpp"

namespace nhqc {

using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

enum class GateId { kT, kS, kNot, kHadamard };

struct NamedGate {
  GateId id = GateId::kT;
  std::string_view name;
  GateSpec spec;
};

NamedGate named_gate(GateId id);
std::optional<NamedGate> parse_gate(std::string_view name);
std::vector<NamedGate> all_named_gates();

/// |psi(0)> = cos(theta0)|0> + sin(theta0) e^{i phi0}|1>. Note theta0, not
/// theta0/2, is the amplitude angle.
struct InitialState {
  double theta0 = 0.0;
  double phi0 = 0.0;

  Vector4 vector() const;
};

/// n_theta values over [0, pi] (both ends) times n_phi values over [0, 2 pi)
/// (2 pi excluded), theta-major. 11 x 91 = 1001 by default.
std::vector<InitialState> initial_state_grid(int n_theta = 11, int n_phi = 91);

/// Dark and bright states of the axis (theta, phi) in span{|0>, |1>}.
std::pair<Vector2, Vector2> dark_bright(double theta, double phi);

/// |d><d| + e^{i gamma}|b><b| on {|0>, |1>}.
Matrix2 target_unitary(const GateSpec& spec);

/// Embeds a 2-component state in the 4-level space.
Vector4 embed(const Vector2& v);

/// Re <target|rho|target>. The target must be normalized and live on
/// {|0>, |1>}; throws DomainError otherwise.
double state_fidelity(const DensityMatrix& state, const Vector4& target);

struct FidelityGrid {
  int n_theta = 11;
  int n_phi = 91;
  int n_steps = kDefaultSteps;
};

/// Mean of state_fidelity over the initial-state grid, one Lindblad
/// trajectory per state. Trajectories are distributed over OpenMP threads;
/// the mean is an ordered compensated sum, so the result does not depend on
/// the thread count.
double average_fidelity(const NamedGate& gate, const PulseSchedule& schedule,
                        const ErrorInjection& err, const DecoherenceRates& rates,
                        const FidelityGrid& grid = {});

/// Single-threaded reference: same states, dense right-hand side, no shared
/// Hamiltonian table.
double average_fidelity_serial(const NamedGate& gate, const PulseSchedule& schedule,
                               const ErrorInjection& err, const DecoherenceRates& rates,
                               const FidelityGrid& grid = {});

/// Per-state fidelities in grid order (the terms of average_fidelity).
std::vector<double> state_fidelities(const GateSpec& target, const PulseSchedule& schedule,
                                     const ErrorInjection& err, const DecoherenceRates& rates,
                                     std::span<const InitialState> states,
                                     int n_steps = kDefaultSteps);

/// Neumaier-compensated sum in the given order.
double compensated_sum(std::span<const double> values);

}  // namespace nhqc
