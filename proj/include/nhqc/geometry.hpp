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

// Circular paths on the Bloch sphere of the {|b>, |e>} subspace.
//
// A state chi(alpha, beta) = cos(alpha/2)|b> + sin(alpha/2) e^{i beta}|e> has
// Bloch vector (sin a cos b, sin a sin b, cos a) with |b> at the north pole.
// The circle used for a gate of phase gamma passes through the pole, encloses
// solid angle 2*gamma and is centred on the beta = 0 meridian at polar angle
// alpha_max/2. It is traversed with beta increasing from -pi/2 to +pi/2.

#include <span>

namespace nhqc::geometry {

struct CircleGeometry {
  double gamma = 0.0;
  double ell_c = 0.0;
  double alpha_max = 0.0;

  static CircleGeometry for_phase(double gamma);
};

enum class Half { kRising, kFalling };

struct PathSample {
  double t = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double xi = 0.0;
};

struct SpherePoint {
  double alpha = 0.0;
  double beta = 0.0;
};

/// 2*sqrt(2*pi*gamma - gamma^2). Throws DomainError unless 0 < gamma < 2*pi.
double circumference(double gamma);

/// arccos((pi^2 - 4*pi*gamma + 2*gamma^2) / pi^2), the polar angle of the
/// point of the circle farthest from the pole.
double alpha_max(double gamma);

/// Solves (pi - gamma)(1 - cos a) = (ell_c/2) sin a cos b for b. The rising
/// branch returns b in [-pi/2, 0], the falling branch b in [0, pi/2].
double beta_from_alpha(double alpha, double gamma, Half half);

/// Point reached after turning the pole by `turn` radians about the circle
/// axis; turn = 0 and 2*pi are the pole, turn = pi is the apex.
SpherePoint circle_point(double gamma, double turn);

/// Residual of the circle equation at (alpha, beta).
double circle_residual(double alpha, double beta, double gamma);

/// 1/2 of the integral of (1 - cos alpha) d(beta) along a sampled closed path,
/// evaluated in area form so the endpoint singularities of d(beta)/dt never
/// enter. For every path synthesized by this library the value equals the
/// gamma it was built for, and the bright state of the drive acquires
/// exp(-i * value) after the cycle.
///
/// Throws DomainError for fewer than 3 samples, decreasing times, or a path
/// that does not start and end at the pole.
double geometric_phase(std::span<const PathSample> path);

/// Integral of (1 - cos alpha) d(beta) over the sampled path (twice the
/// geometric phase); same preconditions.
double enclosed_area(std::span<const PathSample> path);

void require_phase_in_domain(double gamma);

}  // namespace nhqc::geometry
