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

// Pulse synthesis for the four gate schemes.
//
// Every scheme is first built as a dimensionless profile on u = t/tau in
// [0, 1]: the Bloch angles alpha(u), beta(u), the drive phase xi(u), and the
// products Omega*tau and Delta*tau. A physical schedule is the profile divided
// by tau and sampled on a uniform grid. Because Omega scales as 1/tau, fixing
// the peak Rabi frequency fixes tau after one evaluation of the profile peak.
//
// Phase convention. A cyclic pass around any of these paths leaves the dark
// state of the drive unchanged and multiplies the bright state of the drive
// by exp(-i*gamma). The gate |d><d| + exp(i*gamma)|b><b| about axis n is
// therefore driven along the antipodal axis -n (see drive_axis_for).

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/geometry.hpp"

namespace nhqc {

/// Target rotation: geometric phase gamma about n = (sin t cos p, sin t sin p, cos t).
struct GateSpec {
  double gamma = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Angles entering the pump/Stokes parametrization.
struct DriveAxis {
  double theta = 0.0;
  double phi = 0.0;
};

void validate(const GateSpec& gate);

/// (pi - theta, phi + pi): the drive whose dark state is the bright state of
/// the gate axis.
DriveAxis drive_axis_for(const GateSpec& gate);

enum class SchemeKind { kCircular, kOss, kSnhqc, kSquare };

struct Scheme {
  SchemeKind kind = SchemeKind::kCircular;
  double k = 1.0;  // only meaningful for kCircular

  static Scheme circular(double k) { return {SchemeKind::kCircular, k}; }
  static Scheme oss() { return {SchemeKind::kOss, 0.0}; }
  static Scheme snhqc() { return {SchemeKind::kSnhqc, 0.0}; }
  static Scheme square() { return {SchemeKind::kSquare, 0.0}; }

  /// "k=1", "oss", "snhqc", "square"; used as a curve label in tables.
  std::string label() const;
};

std::string_view scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme(std::string_view name);

/// Dimensionless path of one scheme at one geometric phase.
class PathProfile {
 public:
  /// Throws DomainError for gamma outside the scheme's range (circular:
  /// (0, pi]; S-NHQC: (0, pi); OSS and square: (0, 2*pi)) or k <= 0.
  static PathProfile make(const Scheme& scheme, double gamma);

  const Scheme& scheme() const { return scheme_; }
  double gamma() const { return gamma_; }

  double alpha(double u) const;
  double beta(double u) const;
  double xi(double u) const;
  /// Omega(t) * tau at t = u * tau.
  double rabi(double u) const;
  /// Delta(t) * tau at t = u * tau.
  double detuning(double u) const;

  /// max_u rabi(u): dense scan plus golden-section refinement.
  double peak_rabi() const { return peak_rabi_; }
  double peak_location() const { return peak_u_; }
  /// Exact integral of rabi(u) over [0, 1]: ell_c/2, or pi for OSS.
  double rabi_area() const;

  /// Position of a jump in beta/xi (OSS only).
  std::optional<double> jump() const;

 private:
  PathProfile(const Scheme& scheme, double gamma);
  void locate_peak();

  Scheme scheme_;
  double gamma_ = 0.0;
  double alpha_max_ = 0.0;
  double sin_tilt_ = 0.0;     // s / pi, radius of the circle in 3D
  double slope_ = 0.0;        // (pi - gamma) / s = -Delta / (2 Omega)
  double peak_rabi_ = 0.0;
  double peak_u_ = 0.0;
};

struct PulseSample {
  double t = 0.0;      // s
  double omega = 0.0;  // rad/s
  double delta = 0.0;  // rad/s
  double xi = 0.0;     // rad
};

struct PulseSchedule {
  PathProfile path;
  GateSpec gate;
  DriveAxis drive;
  double tau = 0.0;  // s
  std::vector<PulseSample> samples;

  const Scheme& scheme() const { return path.scheme(); }
  double peak_omega() const { return path.peak_rabi() / tau; }
  /// Bloch angles at the sample times, jump samples included.
  std::vector<geometry::PathSample> path_samples() const;
};

struct PumpStokesEnvelope {
  std::vector<std::complex<double>> omega_p;
  std::vector<std::complex<double>> omega_s;
};

inline constexpr int kDefaultSamples = 2001;

/// Either the peak Rabi frequency (rad/s) or the duration (s) is fixed.
struct Timing {
  enum class Mode { kCeiling, kDuration };
  Mode mode = Mode::kCeiling;
  double value = 0.0;

  static Timing ceiling(double omega) { return {Mode::kCeiling, omega}; }
  static Timing duration(double tau) { return {Mode::kDuration, tau}; }
};

/// Common entry point; the named wrappers below forward here.
PulseSchedule synthesize(const Scheme& scheme, const GateSpec& gate, Timing timing,
                         int n_samples = kDefaultSamples);

PulseSchedule synth_circular(const GateSpec& gate, double k, double ceiling,
                             int n_samples = kDefaultSamples);
PulseSchedule synth_circular_fixed_tau(const GateSpec& gate, double k, double tau,
                                       int n_samples = kDefaultSamples);
PulseSchedule synth_oss(const GateSpec& gate, double ceiling,
                        int n_samples = kDefaultSamples);
PulseSchedule synth_snhqc(const GateSpec& gate, double ceiling,
                          int n_samples = kDefaultSamples);
PulseSchedule synth_square(const GateSpec& gate, double omega0,
                           int n_samples = kDefaultSamples);

PumpStokesEnvelope pump_stokes(const PulseSchedule& schedule);

/// tau only, without sampling.
double duration_for_ceiling(const Scheme& scheme, const GateSpec& gate, double ceiling);

/// max |Delta + 2 Omega (pi - gamma)/sqrt(2 pi gamma - gamma^2)| over samples.
double proportionality_residual(const PulseSchedule& schedule);

/// max |<chi+|H~|chi+>| over samples, with
/// <chi+|H~|chi+> = Delta sin^2(alpha/2) + Omega sin(alpha) cos(beta - xi).
double parallel_transport_residual(const PulseSchedule& schedule);

}  // namespace nhqc
