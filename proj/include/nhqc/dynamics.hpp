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

// Four-level dynamics over the ordered basis (|0>, |1>, |e>, |h>).
//
//   H(t) = (Delta + delta)|e><e| + (1 + eps)[Omega_P |0><e| + Omega_S |1><e| + h.c.]
//   d(rho)/dt = -i[H, rho] + 1/2 sum_j Gamma_j (2 A_j rho A_j^+ - {A_j^+ A_j, rho})
//
// with A_1 = |0><e| + sqrt2 |e><1| + sqrt3 |1><h| (decay) and
// A_2 = |e><e| + 2|1><1| + 3|h><h| (dephasing). |h> is reached only through
// the dissipators. Both integrators are fixed-step classic RK4 with the
// Hamiltonian sampled at t, t + h/2 and t + h.

#include <vector>

#include <Eigen/Dense>

#include "nhqc/schemes.hpp"

namespace nhqc {

using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

enum Level : int { kLevel0 = 0, kLevel1 = 1, kLevelE = 2, kLevelH = 3 };

/// Static detuning shift delta (rad/s) and multiplicative Rabi error eps.
struct ErrorInjection {
  double delta_err = 0.0;
  double eps_err = 0.0;
};

struct DecoherenceRates {
  double gamma1 = 0.0;  // rad/s
  double gamma2 = 0.0;  // rad/s

  /// Gamma1 = Gamma2 = 2*pi x 3 kHz.
  static DecoherenceRates superconducting();
};

inline constexpr int kDefaultSteps = 4000;

struct InvariantThresholds {
  double trace = 1e-9;
  double hermiticity = 1e-12;
  double min_eigenvalue = -1e-9;
};

struct DensityMatrix {
  Matrix4 rho = Matrix4::Zero();

  static DensityMatrix pure(const Vector4& psi);

  double trace_drift() const;
  double hermiticity_drift() const;
  double min_eigenvalue() const;
  double population(Level level) const { return rho(level, level).real(); }
};

/// Worst values seen along a trajectory; the Hermiticity drift is measured
/// before the per-step re-Hermitization.
struct TrajectoryDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  double min_eigenvalue = 1.0;
};

/// Throws NumericalError if any invariant is past its threshold.
void check_invariants(const DensityMatrix& state, const InvariantThresholds& limits = {});

/// Linear interpolation of the schedule; throws DomainError outside [0, tau].
Matrix4 hamiltonian_at(double t, const PulseSchedule& schedule, const ErrorInjection& err = {});

Matrix4 decay_operator();
Matrix4 dephasing_operator();

/// Dense evaluation of the master-equation right-hand side.
Matrix4 lindblad_rhs(const Matrix4& rho, const Matrix4& hamiltonian,
                     const DecoherenceRates& rates);

/// H(t) at the 2n + 1 RK4 stage times j * tau / (2n), shared by every
/// trajectory through the same schedule and error.
class HamiltonianTable {
 public:
  HamiltonianTable(const PulseSchedule& schedule, const ErrorInjection& err, int n_steps);

  int steps() const { return n_steps_; }
  double step() const { return step_; }
  const Matrix4& at_half_step(int j) const { return table_[static_cast<std::size_t>(j)]; }

 private:
  int n_steps_ = 0;
  double step_ = 0.0;
  std::vector<Matrix4, Eigen::aligned_allocator<Matrix4>> table_;
};

/// Structured right-hand side: dissipators folded into a non-Hermitian
/// effective Hamiltonian plus sparse jump terms. Preserves Hermiticity of
/// its input exactly.
class LindbladKernel {
 public:
  explicit LindbladKernel(const DecoherenceRates& rates);

  void apply(const Matrix4& rho, const Matrix4& hamiltonian, Matrix4& out) const;

 private:
  Eigen::Vector4d decay_width_;  // diagonal of 1/2 sum Gamma_j A_j^+ A_j
  double gamma1_ = 0.0;
  double gamma2_ = 0.0;
};

DensityMatrix evolve_lindblad(const DensityMatrix& rho0, const PulseSchedule& schedule,
                              const ErrorInjection& err, const DecoherenceRates& rates,
                              int n_steps = kDefaultSteps);

/// Same integration against a prebuilt table. `diagnostics`, when given,
/// is filled with per-step invariant extremes (adds an eigen-solve per step).
DensityMatrix evolve_lindblad(const DensityMatrix& rho0, const HamiltonianTable& table,
                              const LindbladKernel& kernel,
                              TrajectoryDiagnostics* diagnostics = nullptr);

/// Reference integrator on the dense right-hand side; no shared tables.
DensityMatrix evolve_lindblad_reference(const DensityMatrix& rho0, const PulseSchedule& schedule,
                                        const ErrorInjection& err, const DecoherenceRates& rates,
                                        int n_steps = kDefaultSteps);

/// RK4 on the pure state, renormalized every step. Requires ||psi0|| = 1.
Vector4 evolve_unitary(const Vector4& psi0, const PulseSchedule& schedule,
                       const ErrorInjection& err = {}, int n_steps = kDefaultSteps);
Vector4 evolve_unitary(const Vector4& psi0, const HamiltonianTable& table);

/// Columns are the evolved basis states.
Matrix4 propagator(const HamiltonianTable& table);

}  // namespace nhqc
