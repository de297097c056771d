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

// Sweep campaigns. Each campaign turns a SweepConfig into a Table whose rows
// are ordered by grid index, so identical configurations give identical
// bytes. A grid point that fails is kept as a row with an error marker.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/dynamics.hpp"
#include "nhqc/gates.hpp"
#include "nhqc/schemes.hpp"

namespace nhqc {

enum class Campaign {
  kDurationVsGamma,
  kEnvelopeExport,
  kDetuningRobustness,
  kRabiRobustness,
  kCeilingRobustness,
};

std::string_view campaign_name(Campaign c);
std::optional<Campaign> parse_campaign(std::string_view name);

struct SweepConfig {
  std::string preset = "custom";
  Campaign campaign = Campaign::kDurationVsGamma;
  GateId gate = GateId::kT;
  std::vector<Scheme> curves;
  std::vector<double> gammas;    // rad
  std::vector<double> ceilings;  // rad/s; campaigns other than ceiling use the first
  std::vector<double> deltas;    // rad/s
  std::vector<double> eps;
  DecoherenceRates rates;
  FidelityGrid grid;
  int n_samples = kDefaultSamples;
  std::string output;  // empty: stdout
};

/// Throws DomainError on empty or non-finite grids, non-positive ceilings,
/// negative rates, or too few samples.
void validate(const SweepConfig& cfg);

/// fig3 ... fig7. `reduced` shrinks the state grid to 11 x 11 and the error
/// grids to 11 points. Throws DomainError for unknown names.
SweepConfig preset(std::string_view name, GateId gate = GateId::kT, bool reduced = false);

/// Flat `key = value` overrides on top of `base`. Lists are comma-separated
/// or `start:stop:count`. Angles in rad, frequencies in MHz, rates in kHz.
/// `#` starts a comment.
SweepConfig parse_config(std::istream& in, SweepConfig base = {});

struct Table {
  std::vector<std::string> meta;  // written as `# ` lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& table);

// Typed campaign results; to_table renders them.

struct DurationPoint {
  std::string curve;
  double gamma = 0.0;
  std::optional<double> tau;  // s
  std::string error;
};

struct EnvelopePoint {
  std::string curve;
  double tau = 0.0;  // s
  double t = 0.0;    // s
  double omega = 0.0;
};

/// One (curve, x) point of a robustness sweep. x is delta (rad/s) or eps.
struct FidelityPoint {
  std::string curve;
  double tau = 0.0;
  double x = 0.0;
  std::optional<double> fidelity;
  std::string error;
};

std::vector<DurationPoint> duration_vs_gamma(const SweepConfig& cfg);
/// Envelopes at the duration of the k = 1 circular pulse.
std::vector<EnvelopePoint> envelope_export(const SweepConfig& cfg);
std::vector<FidelityPoint> detuning_robustness(const SweepConfig& cfg);
std::vector<FidelityPoint> rabi_robustness(const SweepConfig& cfg);
/// k = 1 curves, one per ceiling, each at its own duration; x is delta.
std::vector<FidelityPoint> ceiling_robustness(const SweepConfig& cfg);

/// Dispatches on cfg.campaign.
Table run_campaign(const SweepConfig& cfg);

/// Caps the number of OpenMP workers; n <= 0 leaves the runtime default.
void set_worker_count(int n);

}  // namespace nhqc
