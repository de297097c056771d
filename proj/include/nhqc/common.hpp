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

#include <numbers>
#include <stdexcept>
#include <string>

namespace nhqc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Input outside the mathematical domain of an operation (bad angle, rate,
/// duration, or a scheme that is singular at the requested phase).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical invariant (trace, Hermiticity, positivity, normalization)
/// drifted past its threshold, or an iterative solve failed.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace units {

// Angular frequencies are rad/s internally; user-facing values are MHz of
// ordinary frequency.
constexpr double mhz_to_rad_per_s(double mhz) { return mhz * kTwoPi * 1e6; }
constexpr double rad_per_s_to_mhz(double w) { return w / kTwoPi / 1e6; }
constexpr double ns_to_s(double ns) { return ns * 1e-9; }
constexpr double s_to_ns(double s) { return s * 1e9; }

}  // namespace units
}  // namespace nhqc
