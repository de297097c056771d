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

#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "nhqc/common.hpp"
#include "nhqc/dynamics.hpp"
#include "nhqc/gates.hpp"
#include "oracles.hpp"

namespace {

using namespace nhqc;
using namespace std::complex_literals;

const double kCeiling = units::mhz_to_rad_per_s(10.0);

Matrix4 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = {n(rng), n(rng)};
  Matrix4 rho = a * a.adjoint();
  return rho / rho.trace();
}

Matrix4 random_hermitian(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n;
  Matrix4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = {n(rng), n(rng)};
  return scale * 0.5 * (a + a.adjoint());
}

// Square pulse at gamma = pi: constant Omega, zero detuning, xi = 0.
PulseSchedule constant_drive(double theta = kPi / 2, double phi = kPi) {
  return synth_square({kPi, theta, phi}, kCeiling, 201);
}

TEST(Hamiltonian, ZeroWhenDriveSwitchedOff) {
  const auto s = constant_drive();
  EXPECT_EQ(hamiltonian_at(0.3 * s.tau, s, {0.0, -1.0}).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Hamiltonian, EqualSplittingCouplings) {
  // Gate axis (pi/2, pi) is driven along (pi/2, 0).
  const auto s = constant_drive();
  const Matrix4 h = hamiltonian_at(0.5 * s.tau, s);
  EXPECT_NEAR(std::abs(h(kLevel0, kLevelE) - kCeiling / std::sqrt(2.0)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(h(kLevel1, kLevelE) + kCeiling / std::sqrt(2.0)), 0.0, 1e-6);
  EXPECT_EQ(h(kLevelE, kLevelE), 0.0);
  EXPECT_EQ(h.row(kLevelH).cwiseAbs().sum(), 0.0);
  EXPECT_EQ(h.col(kLevelH).cwiseAbs().sum(), 0.0);
  EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-20);
}

TEST(Hamiltonian, DarkStateOfDriveIsAnnihilated) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    const GateSpec g{kPi * (0.05 + 0.95 * u(rng)), kPi * u(rng), kTwoPi * u(rng)};
    const auto s = synth_circular(g, 1.0 + 4 * u(rng), kCeiling, 301);
    const auto [d, b] = dark_bright(s.drive.theta, s.drive.phi);
    const Vector4 hd = hamiltonian_at(u(rng) * s.tau, s, {1e6, 0.1}) * embed(d);
    EXPECT_LT(hd.norm(), 1e-8 * kCeiling);
  }
}

TEST(Hamiltonian, RejectsTimesOutsideSupport) {
  const auto s = constant_drive();
  EXPECT_THROW(hamiltonian_at(-0.1 * s.tau, s), DomainError);
  EXPECT_THROW(hamiltonian_at(1.1 * s.tau, s), DomainError);
}

TEST(LindbladRhs, MatchesLiouvillianOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Matrix4 rho = random_density(rng);
    const Matrix4 h = random_hermitian(rng, 1e7);
    const double g1 = 1e5 * (i % 3), g2 = 3e4 * (i % 2);
    const oracle::Vec16 v =
        oracle::liouvillian(h, g1, g2) * Eigen::Map<const oracle::Vec16>(rho.data());
    const Matrix4 expected = Eigen::Map<const Matrix4>(v.data());
    const Matrix4 got = lindblad_rhs(rho, h, {g1, g2});
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-6) << i;
    EXPECT_LT(std::abs(got.trace()), 1e-12 * 1e7);
  }
}

TEST(LindbladRhs, OperatorsAsPrinted) {
  EXPECT_EQ(decay_operator(), oracle::sigma1());
  EXPECT_EQ(dephasing_operator(), oracle::sigma2());
}

TEST(LindbladKernel, AgreesWithDenseForm) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Matrix4 rho = random_density(rng);
    const Matrix4 h = random_hermitian(rng, 1e7);
    const DecoherenceRates r{2e4 * (i % 5), 3e4 * (i % 3)};
    Matrix4 out;
    LindbladKernel(r).apply(rho, h, out);
    EXPECT_LT((out - lindblad_rhs(rho, h, r)).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(LindbladKernel, RejectsNegativeRates) {
  EXPECT_THROW(LindbladKernel({-1.0, 0.0}), DomainError);
  EXPECT_THROW(LindbladKernel({0.0, NAN}), DomainError);
}

TEST(EvolveLindblad, DecayFromExcitedMatchesMatrixExponential) {
  const auto s = constant_drive();
  const DecoherenceRates r{1e7, 5e6};  // fast enough to move population
  Matrix4 rho0 = Matrix4::Zero();
  rho0(kLevelE, kLevelE) = 1.0;
  const DensityMatrix got = evolve_lindblad({rho0}, s, {0.0, -1.0}, r, 2000);
  const Matrix4 expected = oracle::evolve_constant(rho0, Matrix4::Zero(), r.gamma1, r.gamma2, s.tau);
  EXPECT_LT((got.rho - expected).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(got.population(kLevelE), 0.9);
}

TEST(EvolveLindblad, ConstantDriveMatchesMatrixExponential) {
  const auto s = constant_drive(kPi / 3, 0.7);
  const DecoherenceRates r = DecoherenceRates::superconducting();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5; ++i) {
    const Matrix4 rho0 = random_density(rng);
    const DensityMatrix got = evolve_lindblad({rho0}, s, {1e6, 0.05}, r, 4000);
    const Matrix4 h = hamiltonian_at(0.5 * s.tau, s, {1e6, 0.05});
    const Matrix4 expected = oracle::evolve_constant(rho0, h, r.gamma1, r.gamma2, s.tau);
    EXPECT_LT((got.rho - expected).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(EvolveLindblad, IdleScheduleLeavesStateUnchanged) {
  std::mt19937_64 rng(9);
  const Matrix4 rho0 = random_density(rng);
  const DensityMatrix out = evolve_lindblad({rho0}, constant_drive(), {0.0, -1.0}, {}, 1000);
  EXPECT_LT((out.rho - rho0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EvolveLindblad, ZeroRatesMatchUnitaryForNamedGates) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& g : all_named_gates()) {
    const auto s = synth_circular(g.spec, 1.0, kCeiling);
    for (int i = 0; i < 3; ++i) {
      const Vector4 psi = InitialState{kPi * u(rng), kTwoPi * u(rng)}.vector();
      const DensityMatrix rho = evolve_lindblad(DensityMatrix::pure(psi), s, {}, {});
      const Vector4 out = evolve_unitary(psi, s);
      EXPECT_LT((rho.rho - out * out.adjoint()).cwiseAbs().maxCoeff(), 1e-8) << g.name;
    }
  }
}

TEST(EvolveLindblad, ReferenceAndFastKernelAgree) {
  const auto s = synth_circular({kPi / 4, 0, 0}, 1.0, kCeiling);
  const Vector4 psi = InitialState{0.7, 1.9}.vector();
  const auto r = DecoherenceRates::superconducting();
  const DensityMatrix a = evolve_lindblad(DensityMatrix::pure(psi), s, {2e6, 0.03}, r);
  const DensityMatrix b = evolve_lindblad_reference(DensityMatrix::pure(psi), s, {2e6, 0.03}, r);
  EXPECT_LT((a.rho - b.rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EvolveLindblad, NotGateFlipsGroundState) {
  const auto s = synth_circular(named_gate(GateId::kNot).spec, 1.0, kCeiling);
  Vector4 psi = Vector4::Zero();
  psi(kLevel0) = 1.0;
  const DensityMatrix rho = evolve_lindblad(DensityMatrix::pure(psi), s, {}, {});
  EXPECT_GE(rho.population(kLevel1), 1.0 - 1e-4);
}

TEST(EvolveLindblad, TGateWithDecoherenceKeepsInvariants) {
  const auto s = synth_circular(named_gate(GateId::kT).spec, 1.0, kCeiling);
  const HamiltonianTable table(s, {}, kDefaultSteps);
  const LindbladKernel kernel(DecoherenceRates::superconducting());
  const Vector4 psi = InitialState{kPi / 3, 0.4}.vector();
  TrajectoryDiagnostics diag;
  const DensityMatrix rho = evolve_lindblad(DensityMatrix::pure(psi), table, kernel, &diag);
  EXPECT_LT(diag.max_trace_drift, 1e-9);
  EXPECT_LT(diag.max_hermiticity_drift, 1e-12);
  EXPECT_GT(diag.min_eigenvalue, -1e-9);
  const Vector4 goal =
      embed(target_unitary(s.gate) * Vector2(psi(kLevel0), psi(kLevel1)));
  const double f = state_fidelity(rho, goal);
  EXPECT_LT(f, 1.0);
  EXPECT_GT(f, 0.99);
}

TEST(EvolveLindblad, StepHalvingConverges) {
  const auto s = synth_circular(named_gate(GateId::kHadamard).spec, 1.0, kCeiling);
  const Vector4 psi = InitialState{1.0, 2.0}.vector();
  const auto r = DecoherenceRates::superconducting();
  const DensityMatrix a = evolve_lindblad(DensityMatrix::pure(psi), s, {1e6, 0}, r, kDefaultSteps);
  const DensityMatrix b =
      evolve_lindblad(DensityMatrix::pure(psi), s, {1e6, 0}, r, 2 * kDefaultSteps);
  const Vector4 goal = embed(target_unitary(s.gate) * Vector2(psi(kLevel0), psi(kLevel1)));
  EXPECT_LT(std::abs(state_fidelity(a, goal) - state_fidelity(b, goal)), 1e-8);
}

TEST(EvolveLindblad, RejectsTooFewSteps) {
  EXPECT_THROW(HamiltonianTable(constant_drive(), {}, 100), DomainError);
}

TEST(EvolveUnitary, DarkStateIsStationaryAndBrightPicksUpPhase) {
  for (const auto& g : all_named_gates()) {
    const auto s = synth_circular(g.spec, 1.0, kCeiling);
    const auto [dd, bd] = dark_bright(s.drive.theta, s.drive.phi);
    const Vector4 d = embed(dd), b = embed(bd);
    const Vector4 d_out = evolve_unitary(d, s);
    EXPECT_LT((d_out - d).norm(), 1e-12) << g.name;
    // The drive's bright state is the gate's dark state up to a phase; it
    // acquires exp(-i gamma), which is the gate up to a global phase.
    const std::complex<double> phase = b.dot(evolve_unitary(b, s));
    EXPECT_NEAR(std::abs(phase - std::exp(-1i * g.spec.gamma)), 0.0, 1e-4) << g.name;
  }
}

TEST(EvolveUnitary, RejectsUnnormalizedInput) {
  EXPECT_THROW(evolve_unitary(Vector4::Ones(), constant_drive()), DomainError);
}

TEST(Propagator, RestrictionMatchesTargetUpToGlobalPhase) {
  for (const auto& g : all_named_gates()) {
    for (double k : {1.0, 9.0}) {
      const auto s = synth_circular(g.spec, k, kCeiling);
      const Matrix4 u = propagator(HamiltonianTable(s, {}, kDefaultSteps));
      const Eigen::Matrix2cd r = u.topLeftCorner<2, 2>();
      const Matrix2 target = target_unitary(g.spec);
      const std::complex<double> phase = (target.adjoint() * r).trace() / 2.0;
      EXPECT_NEAR(std::abs(phase), 1.0, 1e-4);
      EXPECT_LT((r - phase * target).cwiseAbs().maxCoeff(), 1e-4) << g.name << " k=" << k;
      // Auxiliary levels return empty and |h> is never touched.
      EXPECT_LT(std::norm(u(kLevelE, kLevel0)) + std::norm(u(kLevelE, kLevel1)), 1e-6);
      EXPECT_EQ(u(kLevelH, kLevel0), 0.0);
      EXPECT_EQ(u(kLevelH, kLevel1), 0.0);
    }
  }
}

TEST(Propagator, OssAndSquareAlsoRealizeTarget) {
  for (const auto& g : all_named_gates()) {
    for (const auto& s : {synth_oss(g.spec, kCeiling), synth_square(g.spec, kCeiling)}) {
      const Matrix4 u = propagator(HamiltonianTable(s, {}, kDefaultSteps));
      const Eigen::Matrix2cd r = u.topLeftCorner<2, 2>();
      const Matrix2 target = target_unitary(g.spec);
      const std::complex<double> phase = (target.adjoint() * r).trace() / 2.0;
      EXPECT_LT((r - phase * target).cwiseAbs().maxCoeff(), 1e-4)
          << g.name << " " << s.scheme().label();
    }
  }
}

TEST(Commutation, CircularHamiltonianCommutesWithItself) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (double g : {kPi / 4, kPi / 2, kPi}) {
    const auto s = synth_circular({g, 0.4, 0.2}, 1.0, kCeiling);
    const auto [dd, bd] = dark_bright(s.drive.theta, s.drive.phi);
    Eigen::Matrix<std::complex<double>, 4, 2> basis;
    basis.col(0) = embed(bd);
    basis.col(1) = Vector4::Unit(kLevelE);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Matrix2cd h1 = basis.adjoint() * hamiltonian_at(u(rng) * s.tau, s) * basis;
      const Eigen::Matrix2cd h2 = basis.adjoint() * hamiltonian_at(u(rng) * s.tau, s) * basis;
      EXPECT_LT((h1 * h2 - h2 * h1).cwiseAbs().maxCoeff(), 1e-10 * kCeiling * kCeiling);
    }
  }
}

}  // namespace
