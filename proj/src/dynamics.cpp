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

#include "nhqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <fmt/format.h>

#include "nhqc/common.hpp"

namespace nhqc {
namespace {

using namespace std::complex_literals;

constexpr int kMinSteps = 500;

// Decay operator A_1 maps row a to column kJumpSource[a] with weight
// kJumpWeight[a]; |h> has no image.
constexpr int kJumpSource[4] = {kLevelE, kLevelH, kLevel1, -1};
const double kJumpWeight[4] = {1.0, std::sqrt(3.0), std::sqrt(2.0), 0.0};
// Diagonal of A_2, and of A_1^+ A_1 (the two happen to coincide).
constexpr double kDephasingDiag[4] = {0.0, 2.0, 1.0, 3.0};
constexpr double kDecayNormDiag[4] = {0.0, 2.0, 1.0, 3.0};

void require_steps(int n_steps) {
  if (n_steps < kMinSteps) {
    throw DomainError(fmt::format("need at least {} RK4 steps, got {}", kMinSteps, n_steps));
  }
}

void hermitize(Matrix4& rho) {
  const Matrix4 adj = rho.adjoint();
  rho = 0.5 * (rho + adj);
}

}  // namespace

DecoherenceRates DecoherenceRates::superconducting() {
  const double rate = kTwoPi * 3e3;
  return {rate, rate};
}

DensityMatrix DensityMatrix::pure(const Vector4& psi) {
  return {psi * psi.adjoint()};
}

double DensityMatrix::trace_drift() const { return std::abs(rho.trace() - 1.0); }

double DensityMatrix::hermiticity_drift() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix4 sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void check_invariants(const DensityMatrix& state, const InvariantThresholds& limits) {
  if (!state.rho.allFinite()) throw NumericalError("density matrix is not finite");
  if (const double d = state.hermiticity_drift(); d > limits.hermiticity) {
    throw NumericalError(fmt::format("Hermiticity drift {:.3e} exceeds {:.1e}", d,
                                     limits.hermiticity));
  }
  if (const double d = state.trace_drift(); d > limits.trace) {
    throw NumericalError(fmt::format("trace drift {:.3e} exceeds {:.1e}", d, limits.trace));
  }
  if (const double m = state.min_eigenvalue(); m < limits.min_eigenvalue) {
    throw NumericalError(fmt::format("minimum eigenvalue {:.3e} below {:.1e}", m,
                                     limits.min_eigenvalue));
  }
}

Matrix4 hamiltonian_at(double t, const PulseSchedule& schedule, const ErrorInjection& err) {
  const auto& samples = schedule.samples;
  const double slack = 1e-12 * schedule.tau;
  if (samples.empty() || !(t >= -slack) || !(t <= schedule.tau + slack)) {
    throw DomainError(fmt::format("time {} s outside schedule support [0, {}]", t,
                                  schedule.tau));
  }
  const auto later = std::upper_bound(samples.begin(), samples.end(), t,
                                      [](double x, const PulseSample& s) { return x < s.t; });
  double omega;
  double delta;
  double xi;
  if (later == samples.begin()) {
    omega = later->omega;
    delta = later->delta;
    xi = later->xi;
  } else if (later == samples.end()) {
    omega = samples.back().omega;
    delta = samples.back().delta;
    xi = samples.back().xi;
  } else {
    const auto& a = *(later - 1);
    const auto& b = *later;
    const double f = (t - a.t) / (b.t - a.t);
    omega = a.omega + f * (b.omega - a.omega);
    delta = a.delta + f * (b.delta - a.delta);
    xi = a.xi + f * (b.xi - a.xi);
  }

  const double scale = (1.0 + err.eps_err) * omega;
  const std::complex<double> pump =
      scale * std::sin(0.5 * schedule.drive.theta) * std::exp(-1i * xi);
  const std::complex<double> stokes =
      -scale * std::cos(0.5 * schedule.drive.theta) * std::exp(1i * (schedule.drive.phi - xi));

  Matrix4 h = Matrix4::Zero();
  h(kLevelE, kLevelE) = delta + err.delta_err;
  h(kLevel0, kLevelE) = pump;
  h(kLevel1, kLevelE) = stokes;
  h(kLevelE, kLevel0) = std::conj(pump);
  h(kLevelE, kLevel1) = std::conj(stokes);
  return h;
}

Matrix4 decay_operator() {
  Matrix4 a = Matrix4::Zero();
  a(kLevel0, kLevelE) = 1.0;
  a(kLevelE, kLevel1) = std::sqrt(2.0);
  a(kLevel1, kLevelH) = std::sqrt(3.0);
  return a;
}

Matrix4 dephasing_operator() {
  Matrix4 a = Matrix4::Zero();
  a(kLevelE, kLevelE) = 1.0;
  a(kLevel1, kLevel1) = 2.0;
  a(kLevelH, kLevelH) = 3.0;
  return a;
}

Matrix4 lindblad_rhs(const Matrix4& rho, const Matrix4& hamiltonian,
                     const DecoherenceRates& rates) {
  Matrix4 out = 1i * (rho * hamiltonian - hamiltonian * rho);
  const auto add = [&](const Matrix4& a, double rate) {
    if (rate == 0.0) return;
    const Matrix4 ad = a.adjoint();
    const Matrix4 ada = ad * a;
    out += 0.5 * rate * (2.0 * a * rho * ad - ada * rho - rho * ada);
  };
  add(decay_operator(), rates.gamma1);
  add(dephasing_operator(), rates.gamma2);
  return out;
}

HamiltonianTable::HamiltonianTable(const PulseSchedule& schedule, const ErrorInjection& err,
                                   int n_steps)
    : n_steps_(n_steps) {
  require_steps(n_steps);
  step_ = schedule.tau / n_steps;
  const int nodes = 2 * n_steps + 1;
  table_.reserve(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    const double t = schedule.tau * static_cast<double>(j) / (2.0 * n_steps);
    table_.push_back(hamiltonian_at(t, schedule, err));
  }
}

LindbladKernel::LindbladKernel(const DecoherenceRates& rates)
    : gamma1_(rates.gamma1), gamma2_(rates.gamma2) {
  if (!(rates.gamma1 >= 0.0) || !(rates.gamma2 >= 0.0) || !std::isfinite(rates.gamma1) ||
      !std::isfinite(rates.gamma2)) {
    throw DomainError(fmt::format("decoherence rates must be non-negative, got ({}, {})",
                                  rates.gamma1, rates.gamma2));
  }
  for (int a = 0; a < 4; ++a) {
    decay_width_[a] = 0.5 * (gamma1_ * kDecayNormDiag[a] +
                             gamma2_ * kDephasingDiag[a] * kDephasingDiag[a]);
  }
}

void LindbladKernel::apply(const Matrix4& rho, const Matrix4& hamiltonian, Matrix4& out) const {
  // For Hermitian rho and H, rho H = (H rho)^+, so the commutator needs one
  // product and comes out exactly Hermitian.
  Matrix4 x;
  x.noalias() = hamiltonian * rho;
  for (int b = 0; b < 4; ++b) {
    for (int a = 0; a < 4; ++a) {
      const std::complex<double> comm = x(a, b) - std::conj(x(b, a));
      out(a, b) = std::complex<double>(comm.imag(), -comm.real()) -
                  (decay_width_[a] + decay_width_[b]) * rho(a, b) +
                  gamma2_ * kDephasingDiag[a] * kDephasingDiag[b] * rho(a, b);
    }
  }
  if (gamma1_ != 0.0) {
    for (int b = 0; b < 4; ++b) {
      const int cb = kJumpSource[b];
      if (cb < 0) continue;
      for (int a = 0; a < 4; ++a) {
        const int ca = kJumpSource[a];
        if (ca < 0) continue;
        out(a, b) += gamma1_ * kJumpWeight[a] * kJumpWeight[b] * rho(ca, cb);
      }
    }
  }
}

DensityMatrix evolve_lindblad(const DensityMatrix& rho0, const HamiltonianTable& table,
                              const LindbladKernel& kernel, TrajectoryDiagnostics* diagnostics) {
  Matrix4 rho = rho0.rho;
  hermitize(rho);
  const double h = table.step();
  Matrix4 k1, k2, k3, k4, stage;
  for (int i = 0; i < table.steps(); ++i) {
    const Matrix4& h0 = table.at_half_step(2 * i);
    const Matrix4& h1 = table.at_half_step(2 * i + 1);
    const Matrix4& h2 = table.at_half_step(2 * i + 2);
    kernel.apply(rho, h0, k1);
    stage = rho + (0.5 * h) * k1;
    kernel.apply(stage, h1, k2);
    stage = rho + (0.5 * h) * k2;
    kernel.apply(stage, h1, k3);
    stage = rho + h * k3;
    kernel.apply(stage, h2, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double trace_drift = std::abs(rho.trace() - 1.0);
    if (trace_drift > InvariantThresholds{}.trace) {
      throw NumericalError(fmt::format(
          "trace drift {:.3e} at step {} of {}; reduce the step size", trace_drift, i + 1,
          table.steps()));
    }
    if (diagnostics) {
      const DensityMatrix raw{rho};
      diagnostics->max_hermiticity_drift =
          std::max(diagnostics->max_hermiticity_drift, raw.hermiticity_drift());
    }
    hermitize(rho);
    if (diagnostics) {
      const DensityMatrix cur{rho};
      diagnostics->max_trace_drift = std::max(diagnostics->max_trace_drift, trace_drift);
      diagnostics->min_eigenvalue = std::min(diagnostics->min_eigenvalue, cur.min_eigenvalue());
    }
  }
  DensityMatrix out{rho};
  check_invariants(out);
  return out;
}

DensityMatrix evolve_lindblad(const DensityMatrix& rho0, const PulseSchedule& schedule,
                              const ErrorInjection& err, const DecoherenceRates& rates,
                              int n_steps) {
  check_invariants(rho0);
  const HamiltonianTable table(schedule, err, n_steps);
  return evolve_lindblad(rho0, table, LindbladKernel(rates));
}

DensityMatrix evolve_lindblad_reference(const DensityMatrix& rho0, const PulseSchedule& schedule,
                                        const ErrorInjection& err, const DecoherenceRates& rates,
                                        int n_steps) {
  require_steps(n_steps);
  check_invariants(rho0);
  LindbladKernel{rates};  // validates the rates
  Matrix4 rho = rho0.rho;
  const double h = schedule.tau / n_steps;
  const auto ham = [&](double t) {
    return hamiltonian_at(std::min(t, schedule.tau), schedule, err);
  };
  for (int i = 0; i < n_steps; ++i) {
    const double t = schedule.tau * static_cast<double>(i) / n_steps;
    const Matrix4 h0 = ham(t);
    const Matrix4 h1 = ham(t + 0.5 * h);
    const Matrix4 h2 = ham(t + h);
    const Matrix4 k1 = lindblad_rhs(rho, h0, rates);
    const Matrix4 k2 = lindblad_rhs(rho + 0.5 * h * k1, h1, rates);
    const Matrix4 k3 = lindblad_rhs(rho + 0.5 * h * k2, h1, rates);
    const Matrix4 k4 = lindblad_rhs(rho + h * k3, h2, rates);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    hermitize(rho);
  }
  DensityMatrix out{rho};
  check_invariants(out);
  return out;
}

Vector4 evolve_unitary(const Vector4& psi0, const HamiltonianTable& table) {
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw DomainError(fmt::format("initial state norm {} is not 1", psi0.norm()));
  }
  Vector4 psi = psi0;
  const double h = table.step();
  for (int i = 0; i < table.steps(); ++i) {
    const Matrix4& h0 = table.at_half_step(2 * i);
    const Matrix4& h1 = table.at_half_step(2 * i + 1);
    const Matrix4& h2 = table.at_half_step(2 * i + 2);
    const Vector4 k1 = -1i * (h0 * psi);
    const Vector4 k2 = -1i * (h1 * (psi + (0.5 * h) * k1));
    const Vector4 k3 = -1i * (h1 * (psi + (0.5 * h) * k2));
    const Vector4 k4 = -1i * (h2 * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    psi.normalize();
  }
  if (!psi.allFinite()) throw NumericalError("state vector is not finite");
  return psi;
}

Vector4 evolve_unitary(const Vector4& psi0, const PulseSchedule& schedule,
                       const ErrorInjection& err, int n_steps) {
  const HamiltonianTable table(schedule, err, n_steps);
  return evolve_unitary(psi0, table);
}

Matrix4 propagator(const HamiltonianTable& table) {
  Matrix4 u;
  for (int c = 0; c < 4; ++c) {
    u.col(c) = evolve_unitary(Vector4::Unit(c), table);
  }
  return u;
}

}  // namespace nhqc
