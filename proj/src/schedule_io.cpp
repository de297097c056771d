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

#include "nhqc/schedule_io.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "nhqc/common.hpp"

namespace nhqc {
namespace {

constexpr std::string_view kHeader = "t_ns,omega_rad_per_s,delta_rad_per_s,xi_rad";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double value = 0.0;
  // std::from_chars for double is available in libstdc++ 11.
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw DomainError(fmt::format("cannot parse {} from '{}'", what, t));
  }
  return value;
}

}  // namespace

void write_schedule_csv(std::ostream& out, const PulseSchedule& schedule) {
  const auto& sc = schedule.scheme();
  const std::string k = sc.kind == SchemeKind::kCircular ? fmt::format("{:.17g}", sc.k) : "NA";
  out << fmt::format("# scheme={}, gamma={:.17g}, theta={:.17g}, phi={:.17g}, k={}, tau_ns={:.17g}\n",
                     scheme_name(sc.kind), schedule.gate.gamma, schedule.gate.theta,
                     schedule.gate.phi, k, units::s_to_ns(schedule.tau));
  out << kHeader << '\n';
  for (const auto& s : schedule.samples) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", units::s_to_ns(s.t), s.omega,
                       s.delta, s.xi);
  }
}

PulseSchedule read_schedule_csv(std::istream& in) {
  std::map<std::string, std::string> meta;
  std::vector<PulseSample> samples;
  bool header_seen = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      std::stringstream fields(t.substr(1));
      std::string field;
      while (std::getline(fields, field, ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        meta[trim(std::string_view(field).substr(0, eq))] =
            trim(std::string_view(field).substr(eq + 1));
      }
      continue;
    }
    if (!header_seen) {
      if (t != kHeader) {
        throw DomainError(fmt::format("line {}: expected header '{}'", line_no, kHeader));
      }
      header_seen = true;
      continue;
    }
    std::stringstream row(t);
    std::string cell[4];
    for (auto& c : cell) {
      if (!std::getline(row, c, ',')) {
        throw DomainError(fmt::format("line {}: expected 4 columns", line_no));
      }
    }
    samples.push_back({units::ns_to_s(parse_double(cell[0], "t_ns")),
                       parse_double(cell[1], "omega"), parse_double(cell[2], "delta"),
                       parse_double(cell[3], "xi")});
  }
  for (const char* key : {"scheme", "gamma", "theta", "phi", "k", "tau_ns"}) {
    if (!meta.contains(key)) {
      throw DomainError(fmt::format("schedule metadata is missing '{}'", key));
    }
  }
  if (samples.size() < 2) throw DomainError("schedule has fewer than 2 samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t < samples[i - 1].t) {
      throw DomainError(fmt::format("schedule times decrease at row {}", i));
    }
  }

  const auto kind = parse_scheme(meta["scheme"]);
  if (!kind) throw DomainError(fmt::format("unknown scheme '{}'", meta["scheme"]));
  Scheme scheme{*kind, 0.0};
  if (*kind == SchemeKind::kCircular) scheme.k = parse_double(meta["k"], "k");

  GateSpec gate{parse_double(meta["gamma"], "gamma"), parse_double(meta["theta"], "theta"),
                parse_double(meta["phi"], "phi")};
  validate(gate);
  const double tau = units::ns_to_s(parse_double(meta["tau_ns"], "tau_ns"));
  if (!(tau > 0.0)) throw DomainError("tau_ns must be positive");
  return PulseSchedule{PathProfile::make(scheme, gate.gamma), gate, drive_axis_for(gate), tau,
                       std::move(samples)};
}

}  // namespace nhqc
