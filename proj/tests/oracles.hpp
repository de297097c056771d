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

// Independent reference computations for the tests. Nothing here calls into
// the library: formulas are written from the textbook definitions and
// evaluated with generic numerics (finite differences, adaptive quadrature,
// dense matrix exponentials).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double ell_c(double g) { return 2.0 * std::sqrt(2.0 * pi * g - g * g); }

inline double alpha_max(double g) {
  return std::acos((pi * pi - 4.0 * pi * g + 2.0 * g * g) / (pi * pi));
}

/// Circle through the pole: (pi - g)(1 - cos a) = (ell_c/2) sin a cos b.
inline double circle_beta(double a, double g, bool rising) {
  if (a <= 0.0) return rising ? -pi / 2 : pi / 2;
  double c = (pi - g) * (1.0 - std::cos(a)) / (0.5 * ell_c(g) * std::sin(a));
  c = std::clamp(c, -1.0, 1.0);
  return rising ? -std::acos(c) : std::acos(c);
}

inline double circular_alpha(double u, double g, double k) {
  return alpha_max(g) * std::pow(4.0 * u * (1.0 - u), k + 1.0);
}

inline double circular_beta(double u, double g, double k) {
  return circle_beta(circular_alpha(u, g, k), g, u < 0.5);
}

/// Five-point central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-4) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Omega*tau = 1/2 sqrt(beta'^2 sin^2 alpha + alpha'^2) on the unit interval,
/// away from the endpoints and the apex.
inline double circular_rabi(double u, double g, double k) {
  const double a = circular_alpha(u, g, k);
  const double da = derivative([&](double x) { return circular_alpha(x, g, k); }, u);
  const double db = derivative([&](double x) { return circular_beta(x, g, k); }, u);
  return 0.5 * std::sqrt(db * db * std::sin(a) * std::sin(a) + da * da);
}

/// Peak of circular_rabi: scan, then Brent on the bracket. The centred
/// difference stays accurate across the apex because beta is odd about it.
inline double circular_peak(double g, double k) {
  const int n = 2000;
  double best_u = 0.0, best = -1.0;
  for (int i = 1; i < n; ++i) {
    const double u = static_cast<double>(i) / n;
    if (u < 2e-3 || u > 1 - 2e-3) continue;
    const double v = circular_rabi(u, g, k);
    if (v > best) best = v, best_u = u;
  }
  const auto r = boost::math::tools::brent_find_minima(
      [&](double u) { return -circular_rabi(u, g, k); }, best_u - 1.0 / n, best_u + 1.0 / n, 40);
  return -r.second;
}

/// Integral of f over [a, b] by tanh-sinh quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(f, a, b);
}

inline double square_tau(double g, double omega0) {
  return std::sqrt(2.0 * pi * g - g * g) / omega0;
}

inline double oss_tau(double ceiling) { return pi * pi / (2.0 * ceiling); }

using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<std::complex<double>, 16, 16>;
using Vec16 = Eigen::Matrix<std::complex<double>, 16, 1>;

inline Mat4 sigma1() {
  Mat4 s = Mat4::Zero();
  s(0, 2) = 1.0;               // |0><e|
  s(2, 1) = std::sqrt(2.0);    // sqrt2 |e><1|
  s(1, 3) = std::sqrt(3.0);    // sqrt3 |1><h|
  return s;
}

inline Mat4 sigma2() {
  Mat4 s = Mat4::Zero();
  s(2, 2) = 1.0;
  s(1, 1) = 2.0;
  s(3, 3) = 3.0;
  return s;
}

/// Column-stacked Liouvillian of -i[H, .] + 1/2 sum G_j (2 A . A^+ - {A^+A, .}).
inline Mat16 liouvillian(const Mat4& h, double g1, double g2) {
  const Mat4 id = Mat4::Identity();
  Mat16 l = -std::complex<double>(0, 1) *
            (Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.transpose(), id)).eval();
  const auto add = [&](const Mat4& a, double g) {
    const Mat4 ada = a.adjoint() * a;
    l += 0.5 * g *
         (2.0 * Eigen::kroneckerProduct(a.conjugate(), a) - Eigen::kroneckerProduct(id, ada) -
          Eigen::kroneckerProduct(ada.transpose(), id))
             .eval();
  };
  add(sigma1(), g1);
  add(sigma2(), g2);
  return l;
}

/// rho(t) = exp(L t) rho0 for a constant generator.
inline Mat4 evolve_constant(const Mat4& rho0, const Mat4& h, double g1, double g2, double t) {
  const Mat16 prop = (liouvillian(h, g1, g2) * t).exp();
  const Vec16 v = prop * Eigen::Map<const Vec16>(rho0.data());
  return Eigen::Map<const Mat4>(v.data());
}

}  // namespace oracle
