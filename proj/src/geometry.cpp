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

#include "nhqc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "nhqc/common.hpp"

namespace nhqc::geometry {
namespace {

constexpr double kPoleTolerance = 1e-9;

// sqrt(2*pi*gamma - gamma^2), factored to keep precision near the ends.
double half_circumference(double gamma) {
  return std::sqrt(gamma * (kTwoPi - gamma));
}

void require_path(std::span<const PathSample> path) {
  if (path.size() < 3) {
    throw DomainError(fmt::format("geometric phase needs at least 3 samples, got {}",
                                  path.size()));
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!(path[i].t >= path[i - 1].t)) {
      throw DomainError(fmt::format("path times decrease at sample {}", i));
    }
  }
  if (std::abs(path.front().alpha) > kPoleTolerance ||
      std::abs(path.back().alpha) > kPoleTolerance) {
    throw DomainError("path must start and end at the pole (alpha = 0)");
  }
}

}  // namespace

void require_phase_in_domain(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0 || gamma >= kTwoPi) {
    throw DomainError(fmt::format("geometric phase {} outside (0, 2*pi)", gamma));
  }
}

CircleGeometry CircleGeometry::for_phase(double gamma) {
  return {gamma, circumference(gamma), geometry::alpha_max(gamma)};
}

double circumference(double gamma) {
  require_phase_in_domain(gamma);
  return 2.0 * half_circumference(gamma);
}

double alpha_max(double gamma) {
  require_phase_in_domain(gamma);
  // Same value as arccos((pi^2 - 4 pi g + 2 g^2) / pi^2) but without the
  // square-root loss of precision that arccos has near 1.
  return 2.0 * std::atan2(half_circumference(gamma), std::abs(kPi - gamma));
}

double beta_from_alpha(double alpha, double gamma, Half half) {
  const double amax = alpha_max(gamma);
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw DomainError(fmt::format("polar angle {} is negative", alpha));
  }
  if (alpha > amax * (1.0 + 1e-12) + 1e-15) {
    throw DomainError(fmt::format(
        "polar angle {} exceeds alpha_max {} for gamma {}; no point on the circle",
        alpha, amax, gamma));
  }
  if (alpha >= amax) return 0.0;
  const double ratio = (kPi - gamma) / half_circumference(gamma);
  const double c = std::clamp(ratio * std::tan(0.5 * alpha), -1.0, 1.0);
  const double beta = std::acos(c);
  return half == Half::kRising ? -beta : beta;
}

SpherePoint circle_point(double gamma, double turn) {
  require_phase_in_domain(gamma);
  const double s = half_circumference(gamma);
  const double sin_tilt = s / kPi;
  const double cos_tilt = (kPi - gamma) / kPi;
  const double sh = std::sin(0.5 * turn);
  const double ch = std::cos(0.5 * turn);
  const double alpha = 2.0 * std::asin(std::clamp(sin_tilt * std::abs(sh), 0.0, 1.0));
  const double beta = std::atan2(-ch, std::abs(sh) * cos_tilt);
  return {alpha, beta};
}

double circle_residual(double alpha, double beta, double gamma) {
  return (kPi - gamma) * (1.0 - std::cos(alpha)) -
         half_circumference(gamma) * std::sin(alpha) * std::cos(beta);
}

double enclosed_area(std::span<const PathSample> path) {
  require_path(path);
  double area = 0.0;
  double comp = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double lift =
        0.5 * ((1.0 - std::cos(path[i - 1].alpha)) + (1.0 - std::cos(path[i].alpha)));
    const double term = lift * (path[i].beta - path[i - 1].beta);
    // Neumaier summation; the sum has large cancelling contributions for
    // long paths.
    const double next = area + term;
    comp += std::abs(area) >= std::abs(term) ? (area - next) + term
                                             : (term - next) + area;
    area = next;
  }
  return area + comp;
}

double geometric_phase(std::span<const PathSample> path) {
  return 0.5 * enclosed_area(path);
}

}  // namespace nhqc::geometry
