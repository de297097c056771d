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

// Schedule CSV:
//
//   # scheme=circular, gamma=0.785..., theta=0, phi=0, k=1, tau_ns=39.99...
//   t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad
//   0,0,-0,0
//   ...
//
// theta/phi are the gate axis; the drive axis is derived from it on load.
// k is written as NA for schemes other than circular.

#include <iosfwd>

#include "nhqc/schemes.hpp"

namespace nhqc {

void write_schedule_csv(std::ostream& out, const PulseSchedule& schedule);

/// Throws DomainError on malformed metadata or rows.
PulseSchedule read_schedule_csv(std::istream& in);

}  // namespace nhqc
