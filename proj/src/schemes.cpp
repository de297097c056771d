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

#include "nhqc/schemes.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "nhqc/common.hpp"

namespace nhqc {
namespace {

constexpr int kPeakScanPoints = 4001;
constexpr double kGoldenTolerance = 1e-13;

double sqr(double x) { return x * x; }

void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError(fmt::format("{} must be positive and finite, got {}", what, value));
  }
}

// Golden-section search for the maximum of f on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kGoldenTolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Oss phases on the outgoing and returning meridians. The jump at the south
// pole is beta2 - beta1 = gamma, so the enclosed area has the same sign as
// on the circular paths.
constexpr double kOssBetaOut = 0.0;

}  // namespace

void validate(const GateSpec& gate) {
  geometry::require_phase_in_domain(gate.gamma);
  if (!std::isfinite(gate.theta) || gate.theta < 0.0 || gate.theta > kPi) {
    throw DomainError(fmt::format("axis polar angle {} outside [0, pi]", gate.theta));
  }
  if (!std::isfinite(gate.phi)) {
    throw DomainError("axis azimuth must be finite");
  }
}

DriveAxis drive_axis_for(const GateSpec& gate) {
  double phi = std::fmod(gate.phi + kPi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  return {kPi - gate.theta, phi};
}

std::string Scheme::label() const {
  if (kind == SchemeKind::kCircular) return fmt::format("k={:g}", k);
  return std::string(scheme_name(kind));
}

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kCircular: return "circular";
    case SchemeKind::kOss: return "oss";
    case SchemeKind::kSnhqc: return "snhqc";
    case SchemeKind::kSquare: return "square";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  for (auto kind : {SchemeKind::kCircular, SchemeKind::kOss, SchemeKind::kSnhqc,
                    SchemeKind::kSquare}) {
    if (scheme_name(kind) == name) return kind;
  }
  return std::nullopt;
}

PathProfile::PathProfile(const Scheme& scheme, double gamma)
    : scheme_(scheme), gamma_(gamma) {}

PathProfile PathProfile::make(const Scheme& scheme, double gamma) {
  geometry::require_phase_in_domain(gamma);
  switch (scheme.kind) {
    case SchemeKind::kCircular:
      require_positive(scheme.k, "exponent k");
      if (gamma > kPi) {
        throw DomainError(fmt::format("circular scheme needs gamma in (0, pi], got {}", gamma));
      }
      break;
    case SchemeKind::kSnhqc:
      if (gamma >= kPi) {
        throw DomainError(fmt::format(
            "S-NHQC is singular at gamma = pi and undefined beyond (gamma = {})", gamma));
      }
      break;
    case SchemeKind::kOss:
    case SchemeKind::kSquare:
      break;
  }
  PathProfile p(scheme, gamma);
  const double s = std::sqrt(gamma * (kTwoPi - gamma));
  p.alpha_max_ = geometry::alpha_max(gamma);
  p.sin_tilt_ = s / kPi;
  p.slope_ = (kPi - gamma) / s;
  p.locate_peak();
  return p;
}

void PathProfile::locate_peak() {
  if (scheme_.kind == SchemeKind::kSquare) {
    peak_u_ = 0.5;
    peak_rabi_ = rabi(0.5);
    return;
  }
  std::size_t best = 0;
  double best_value = -1.0;
  for (int i = 0; i < kPeakScanPoints; ++i) {
    const double v = rabi(static_cast<double>(i) / (kPeakScanPoints - 1));
    if (v > best_value) {
      best_value = v;
      best = static_cast<std::size_t>(i);
    }
  }
  if (best == 0 || best + 1 == static_cast<std::size_t>(kPeakScanPoints)) {
    throw NumericalError(fmt::format(
        "peak Rabi frequency of {} (gamma = {}) sits on the interval boundary; "
        "search does not bracket",
        scheme_.label(), gamma_));
  }
  const double step = 1.0 / (kPeakScanPoints - 1);
  const double lo = (static_cast<double>(best) - 1.0) * step;
  const double hi = (static_cast<double>(best) + 1.0) * step;
  peak_u_ = golden_max([this](double u) { return rabi(u); }, lo, hi);
  peak_rabi_ = std::max(rabi(peak_u_), best_value);
}

double PathProfile::alpha(double u) const {
  switch (scheme_.kind) {
    case SchemeKind::kCircular: {
      const double bar = 4.0 * (u - u * u);
      return alpha_max_ * std::pow(bar, scheme_.k + 1.0);
    }
    case SchemeKind::kSquare:
      return geometry::circle_point(gamma_, kTwoPi * u).alpha;
    case SchemeKind::kSnhqc: {
      const double b = beta(u);
      return 2.0 * std::atan(std::sin(b) / slope_);
    }
    case SchemeKind::kOss:
      return kPi * sqr(std::sin(kPi * u));
  }
  return 0.0;
}

double PathProfile::beta(double u) const {
  switch (scheme_.kind) {
    case SchemeKind::kCircular:
      return geometry::beta_from_alpha(std::min(alpha(u), alpha_max_), gamma_,
                                       u < 0.5 ? geometry::Half::kRising
                                               : geometry::Half::kFalling);
    case SchemeKind::kSquare:
      return geometry::circle_point(gamma_, kTwoPi * u).beta;
    case SchemeKind::kSnhqc:
      return kPi * sqr(std::sin(0.5 * kPi * u));
    case SchemeKind::kOss:
      return u < 0.5 ? kOssBetaOut : kOssBetaOut + gamma_;
  }
  return 0.0;
}

double PathProfile::xi(double u) const {
  switch (scheme_.kind) {
    case SchemeKind::kCircular:
    case SchemeKind::kSquare:
      return 0.0;
    case SchemeKind::kSnhqc:
      // beta here is offset by pi/2 from the circle convention.
      return 0.5 * kPi;
    case SchemeKind::kOss:
      // Omega = -alpha'/(2 sin(beta - xi)) >= 0 on both halves.
      return u < 0.5 ? beta(u) + 0.5 * kPi : beta(u) - 0.5 * kPi;
  }
  return 0.0;
}

double PathProfile::rabi(double u) const {
  switch (scheme_.kind) {
    case SchemeKind::kCircular: {
      // Omega*tau = (sin_tilt/2) d(turn)/du, where the turn angle about the
      // circle axis satisfies sin(turn/2) = sin(alpha/2)/sin_tilt. Written in
      // terms of w = (1-2u)^2 so the removable 0/0 at the apex cancels
      // analytically.
      const double k = scheme_.k;
      const double w = sqr(1.0 - 2.0 * u);
      const double bar = 1.0 - w;
      const double h = w > 0.0 ? -std::expm1((k + 1.0) * std::log1p(-w)) / w : k + 1.0;
      const double x = 0.5 * alpha_max_ * w * h;  // (alpha_max - alpha)/2
      const double sinc = x > 0.0 ? std::sin(x) / x : 1.0;
      const double pole_gap = kPi - alpha_max_;
      const double lower = std::sin(pole_gap + x);
      const double ratio = lower > 0.0 ? std::sin(0.5 * pole_gap + x) / std::sqrt(lower) : 0.0;
      const double turn_rate = 4.0 * alpha_max_ * (k + 1.0) * std::pow(bar, k) * ratio /
                               std::sqrt(sinc * 0.5 * alpha_max_ * h);
      return 0.5 * sin_tilt_ * turn_rate;
    }
    case SchemeKind::kSquare:
      return kPi * sin_tilt_;
    case SchemeKind::kSnhqc: {
      const double p = 1.0 / slope_;
      const double b = beta(u);
      const double db = 0.5 * kPi * kPi * std::sin(kPi * u);
      return db * p / (1.0 + sqr(p * std::sin(b)));
    }
    case SchemeKind::kOss:
      return 0.5 * kPi * kPi * std::abs(std::sin(kTwoPi * u));
  }
  return 0.0;
}

double PathProfile::detuning(double u) const {
  if (scheme_.kind == SchemeKind::kOss) return 0.0;
  return -2.0 * slope_ * rabi(u);
}

double PathProfile::rabi_area() const {
  if (scheme_.kind == SchemeKind::kOss) return kPi;
  return kPi * sin_tilt_;
}

std::optional<double> PathProfile::jump() const {
  if (scheme_.kind == SchemeKind::kOss) return 0.5;
  return std::nullopt;
}

namespace {

// A sample is evaluated at `eval` but stamped with time `at` (both as
// fractions of tau). They differ only for the first copy of a duplicated jump
// sample, which carries the left limit.
struct Node {
  double eval;
  double at;
};

std::vector<Node> uniform_nodes(const PathProfile& path, int n_samples) {
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n_samples) + 2);
  const auto jump = path.jump();
  bool jump_done = !jump.has_value();
  for (int i = 0; i < n_samples; ++i) {
    const double u = static_cast<double>(i) / (n_samples - 1);
    if (!jump_done && u >= *jump) {
      nodes.push_back({std::nextafter(*jump, 0.0), *jump});
      nodes.push_back({*jump, *jump});
      jump_done = true;
      if (u == *jump) continue;
    }
    nodes.push_back({u, u});
  }
  return nodes;
}

}  // namespace

std::vector<geometry::PathSample> PulseSchedule::path_samples() const {
  std::vector<geometry::PathSample> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double at = std::clamp(samples[i].t / tau, 0.0, 1.0);
    const bool left_copy = i + 1 < samples.size() && samples[i + 1].t == samples[i].t;
    const double u = left_copy ? std::nextafter(at, 0.0) : at;
    out.push_back({samples[i].t, path.alpha(u), path.beta(u), path.xi(u)});
  }
  return out;
}

PulseSchedule synthesize(const Scheme& scheme, const GateSpec& gate, Timing timing,
                         int n_samples) {
  validate(gate);
  if (n_samples < 100) {
    throw DomainError(fmt::format("need at least 100 samples, got {}", n_samples));
  }
  require_positive(timing.value,
                   timing.mode == Timing::Mode::kCeiling ? "Rabi ceiling" : "duration");
  auto path = PathProfile::make(scheme, gate.gamma);
  const double tau = timing.mode == Timing::Mode::kCeiling
                         ? path.peak_rabi() / timing.value
                         : timing.value;
  PulseSchedule schedule{path, gate, drive_axis_for(gate), tau, {}};
  const auto nodes = uniform_nodes(path, n_samples);
  schedule.samples.reserve(nodes.size());
  for (const auto& n : nodes) {
    schedule.samples.push_back(
        {n.at * tau, path.rabi(n.eval) / tau, path.detuning(n.eval) / tau, path.xi(n.eval)});
  }
  return schedule;
}

PulseSchedule synth_circular(const GateSpec& gate, double k, double ceiling, int n_samples) {
  return synthesize(Scheme::circular(k), gate, Timing::ceiling(ceiling), n_samples);
}

PulseSchedule synth_circular_fixed_tau(const GateSpec& gate, double k, double tau,
                                       int n_samples) {
  return synthesize(Scheme::circular(k), gate, Timing::duration(tau), n_samples);
}

PulseSchedule synth_oss(const GateSpec& gate, double ceiling, int n_samples) {
  return synthesize(Scheme::oss(), gate, Timing::ceiling(ceiling), n_samples);
}

PulseSchedule synth_snhqc(const GateSpec& gate, double ceiling, int n_samples) {
  return synthesize(Scheme::snhqc(), gate, Timing::ceiling(ceiling), n_samples);
}

PulseSchedule synth_square(const GateSpec& gate, double omega0, int n_samples) {
  return synthesize(Scheme::square(), gate, Timing::ceiling(omega0), n_samples);
}

PumpStokesEnvelope pump_stokes(const PulseSchedule& schedule) {
  using namespace std::complex_literals;
  PumpStokesEnvelope env;
  env.omega_p.reserve(schedule.samples.size());
  env.omega_s.reserve(schedule.samples.size());
  const double sp = std::sin(0.5 * schedule.drive.theta);
  const double cp = std::cos(0.5 * schedule.drive.theta);
  for (const auto& s : schedule.samples) {
    env.omega_p.push_back(s.omega * sp * std::exp(-1i * s.xi));
    env.omega_s.push_back(-s.omega * cp * std::exp(1i * (schedule.drive.phi - s.xi)));
  }
  return env;
}

double duration_for_ceiling(const Scheme& scheme, const GateSpec& gate, double ceiling) {
  validate(gate);
  require_positive(ceiling, "Rabi ceiling");
  return PathProfile::make(scheme, gate.gamma).peak_rabi() / ceiling;
}

double proportionality_residual(const PulseSchedule& schedule) {
  const double g = schedule.gate.gamma;
  const double ratio = 2.0 * (kPi - g) / std::sqrt(g * (kTwoPi - g));
  double worst = 0.0;
  for (const auto& s : schedule.samples) {
    worst = std::max(worst, std::abs(s.delta + ratio * s.omega));
  }
  return worst;
}

double parallel_transport_residual(const PulseSchedule& schedule) {
  const auto path = schedule.path_samples();
  double worst = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& p = path[i];
    const auto& s = schedule.samples[i];
    const double energy = s.delta * sqr(std::sin(0.5 * p.alpha)) +
                          s.omega * std::sin(p.alpha) * std::cos(p.beta - p.xi);
    worst = std::max(worst, std::abs(energy));
  }
  return worst;
}

}  // namespace nhqc
