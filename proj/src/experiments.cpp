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

#include "nhqc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <omp.h>

#include "nhqc/common.hpp"

namespace nhqc {
namespace {

constexpr double kDefaultCeiling = units::mhz_to_rad_per_s(10.0);

std::vector<double> linspace(double a, double b, int n) {
  if (n == 1) return {a};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<Scheme> circular_curves(std::initializer_list<double> ks) {
  std::vector<Scheme> out;
  for (double k : ks) out.push_back(Scheme::circular(k));
  return out;
}

std::string num(double v) { return fmt::format("{:.10g}", v); }

std::string join(const std::vector<double>& v, double scale = 1.0) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += num(v[i] * scale);
  }
  return s;
}

std::string curve_list(const std::vector<Scheme>& curves) {
  std::string s;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i) s += ';';
    s += curves[i].label();
  }
  return s;
}

double first_ceiling(const SweepConfig& cfg) { return cfg.ceilings.front(); }

/// Duration shared by every curve of a fixed-tau campaign.
double reference_duration(const SweepConfig& cfg, double ceiling) {
  return duration_for_ceiling(Scheme::circular(1.0), named_gate(cfg.gate).spec, ceiling);
}

struct Curve {
  std::string label;
  std::optional<PulseSchedule> schedule;
  std::string error;
};

Curve build_curve(std::string label, const Scheme& scheme, const GateSpec& gate, Timing timing,
                  int n_samples) {
  Curve c{std::move(label), std::nullopt, {}};
  try {
    c.schedule = synthesize(scheme, gate, timing, n_samples);
  } catch (const DomainError& e) {
    c.error = e.what();
  } catch (const NumericalError& e) {
    c.error = e.what();
  }
  return c;
}

/// Fidelity at each x for each curve, in (curve, x) order.
template <class MakeError>
std::vector<FidelityPoint> sweep_curves(const SweepConfig& cfg, const std::vector<Curve>& curves,
                                        const std::vector<double>& xs, MakeError make_error) {
  const NamedGate gate = named_gate(cfg.gate);
  std::vector<FidelityPoint> out;
  out.reserve(curves.size() * xs.size());
  for (const auto& c : curves) {
    for (double x : xs) {
      FidelityPoint p{c.label, c.schedule ? c.schedule->tau : 0.0, x, std::nullopt, c.error};
      if (c.schedule) {
        try {
          p.fidelity = average_fidelity(gate, *c.schedule, make_error(x), cfg.rates, cfg.grid);
        } catch (const DomainError& e) {
          p.error = e.what();
        } catch (const NumericalError& e) {
          p.error = e.what();
        }
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Curve> fixed_tau_curves(const SweepConfig& cfg) {
  const GateSpec gate = named_gate(cfg.gate).spec;
  const double tau = reference_duration(cfg, first_ceiling(cfg));
  std::vector<Curve> curves;
  for (const auto& s : cfg.curves) {
    curves.push_back(build_curve(s.label(), s, gate, Timing::duration(tau), cfg.n_samples));
  }
  return curves;
}

void require_finite(const std::vector<double>& v, const char* what, bool allow_empty = false) {
  if (v.empty() && !allow_empty) throw DomainError(fmt::format("{} grid is empty", what));
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(fmt::format("{} grid has a non-finite value", what));
  }
}

// ---- config parsing -------------------------------------------------------

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view s, std::string_view key) {
  s = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw DomainError(fmt::format("config key '{}': '{}' is not a number", key, s));
  }
  return v;
}

int parse_int(std::string_view s, std::string_view key) {
  const double v = parse_number(s, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw DomainError(fmt::format("config key '{}': '{}' is not an integer", key, s));
  }
  return static_cast<int>(v);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<double> parse_list(std::string_view s, std::string_view key, double scale = 1.0) {
  std::vector<double> out;
  const auto range = split(s, ':');
  if (range.size() == 3) {
    const int n = parse_int(range[2], key);
    if (n < 1) throw DomainError(fmt::format("config key '{}': count must be >= 1", key));
    out = linspace(parse_number(range[0], key), parse_number(range[1], key), n);
  } else if (range.size() == 1) {
    for (auto part : split(s, ',')) out.push_back(parse_number(part, key));
  } else {
    throw DomainError(fmt::format("config key '{}': expected start:stop:count", key));
  }
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace

std::string_view campaign_name(Campaign c) {
  switch (c) {
    case Campaign::kDurationVsGamma: return "duration_vs_gamma";
    case Campaign::kEnvelopeExport: return "envelope_export";
    case Campaign::kDetuningRobustness: return "detuning_robustness";
    case Campaign::kRabiRobustness: return "rabi_robustness";
    case Campaign::kCeilingRobustness: return "ceiling_robustness";
  }
  return "unknown";
}

std::optional<Campaign> parse_campaign(std::string_view name) {
  for (auto c : {Campaign::kDurationVsGamma, Campaign::kEnvelopeExport,
                 Campaign::kDetuningRobustness, Campaign::kRabiRobustness,
                 Campaign::kCeilingRobustness}) {
    if (campaign_name(c) == name) return c;
  }
  return std::nullopt;
}

void validate(const SweepConfig& cfg) {
  if (cfg.curves.empty()) throw DomainError("no curves configured");
  for (const auto& s : cfg.curves) {
    if (s.kind == SchemeKind::kCircular && !(s.k > 0.0 && std::isfinite(s.k))) {
      throw DomainError(fmt::format("circular k must be positive, got {}", s.k));
    }
  }
  require_finite(cfg.ceilings, "ceiling");
  for (double c : cfg.ceilings) {
    if (c <= 0.0) throw DomainError("ceilings must be positive");
  }
  switch (cfg.campaign) {
    case Campaign::kDurationVsGamma: require_finite(cfg.gammas, "gamma"); break;
    case Campaign::kEnvelopeExport: break;
    case Campaign::kDetuningRobustness:
    case Campaign::kCeilingRobustness: require_finite(cfg.deltas, "delta"); break;
    case Campaign::kRabiRobustness: require_finite(cfg.eps, "eps"); break;
  }
  if (!(cfg.rates.gamma1 >= 0.0) || !(cfg.rates.gamma2 >= 0.0)) {
    throw DomainError("decoherence rates must be non-negative");
  }
  if (cfg.grid.n_theta < 2 || cfg.grid.n_phi < 1) throw DomainError("state grid too small");
  if (cfg.grid.n_steps < 500) throw DomainError("n_steps must be >= 500");
  if (cfg.n_samples < 100) throw DomainError("n_samples must be >= 100");
}

SweepConfig preset(std::string_view name, GateId gate, bool reduced) {
  SweepConfig cfg;
  cfg.preset = std::string(name);
  cfg.gate = gate;
  cfg.ceilings = {kDefaultCeiling};
  const int n_err = reduced ? 11 : 41;
  // Reduced grids keep 0 and +/-1 MHz on grid.
  const double delta_mhz = reduced ? 2.5 : 2.0;
  cfg.deltas = linspace(units::mhz_to_rad_per_s(-delta_mhz), units::mhz_to_rad_per_s(delta_mhz),
                        n_err);
  cfg.eps = linspace(-0.2, 0.2, n_err);
  if (reduced) cfg.grid = {11, 11, kDefaultSteps};
  const auto fixed_tau = [&] {
    cfg.curves = circular_curves({1.0, 5.0, 9.0});
    cfg.curves.push_back(Scheme::oss());
    cfg.rates = DecoherenceRates::superconducting();
  };
  if (name == "fig3") {
    cfg.campaign = Campaign::kDurationVsGamma;
    cfg.curves = circular_curves({0.1, 1.0 / 3.0, 1.0, 5.0, 9.0});
    cfg.curves.push_back(Scheme::snhqc());
    cfg.curves.push_back(Scheme::oss());
    cfg.curves.push_back(Scheme::square());
    for (int i = 1; i <= 20; ++i) cfg.gammas.push_back(kPi * i / 20.0);
  } else if (name == "fig4") {
    cfg.campaign = Campaign::kEnvelopeExport;
    fixed_tau();
    cfg.n_samples = reduced ? 201 : 401;
  } else if (name == "fig5") {
    cfg.campaign = Campaign::kDetuningRobustness;
    fixed_tau();
  } else if (name == "fig6") {
    cfg.campaign = Campaign::kRabiRobustness;
    fixed_tau();
  } else if (name == "fig7") {
    cfg.campaign = Campaign::kCeilingRobustness;
    cfg.curves = {Scheme::circular(1.0)};
    cfg.ceilings = {kDefaultCeiling, 1.5 * kDefaultCeiling, 2.0 * kDefaultCeiling};
    cfg.rates = DecoherenceRates::superconducting();
  } else {
    throw DomainError(fmt::format("unknown preset '{}'", name));
  }
  return cfg;
}

SweepConfig parse_config(std::istream& in, SweepConfig cfg) {
  std::vector<SchemeKind> kinds;
  std::vector<double> ks;
  for (const auto& s : cfg.curves) {
    if (s.kind == SchemeKind::kCircular) {
      ks.push_back(s.k);
      if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end()) kinds.push_back(s.kind);
    } else {
      kinds.push_back(s.kind);
    }
  }
  bool curves_touched = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError(fmt::format("config line {}: expected key = value", lineno));
    }
    const std::string_view key = trim(sv.substr(0, eq));
    const std::string_view value = trim(sv.substr(eq + 1));

    if (key == "preset") {
      cfg = preset(value, cfg.gate);
      return parse_config(in, cfg);  // remaining lines override the preset
    } else if (key == "campaign") {
      const auto c = parse_campaign(value);
      if (!c) throw DomainError(fmt::format("unknown campaign '{}'", value));
      cfg.campaign = *c;
    } else if (key == "gate") {
      const auto g = parse_gate(value);
      if (!g) throw DomainError(fmt::format("unknown gate '{}'", value));
      cfg.gate = g->id;
    } else if (key == "schemes") {
      kinds.clear();
      for (auto part : split(value, ',')) {
        const auto k = parse_scheme(part);
        if (!k) throw DomainError(fmt::format("unknown scheme '{}'", part));
        kinds.push_back(*k);
      }
      curves_touched = true;
    } else if (key == "k") {
      ks = parse_list(value, key);
      curves_touched = true;
    } else if (key == "gamma") {
      cfg.gammas = parse_list(value, key);
    } else if (key == "ceiling_mhz") {
      cfg.ceilings = parse_list(value, key, units::mhz_to_rad_per_s(1.0));
    } else if (key == "delta_mhz") {
      cfg.deltas = parse_list(value, key, units::mhz_to_rad_per_s(1.0));
    } else if (key == "eps") {
      cfg.eps = parse_list(value, key);
    } else if (key == "gamma1_khz") {
      cfg.rates.gamma1 = units::mhz_to_rad_per_s(parse_number(value, key) * 1e-3);
    } else if (key == "gamma2_khz") {
      cfg.rates.gamma2 = units::mhz_to_rad_per_s(parse_number(value, key) * 1e-3);
    } else if (key == "n_theta") {
      cfg.grid.n_theta = parse_int(value, key);
    } else if (key == "n_phi") {
      cfg.grid.n_phi = parse_int(value, key);
    } else if (key == "n_steps") {
      cfg.grid.n_steps = parse_int(value, key);
    } else if (key == "n_samples") {
      cfg.n_samples = parse_int(value, key);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "label") {
      cfg.preset = std::string(value);
    } else {
      throw DomainError(fmt::format("config line {}: unknown key '{}'", lineno, key));
    }
  }

  if (curves_touched) {
    cfg.curves.clear();
    for (auto kind : kinds) {
      if (kind == SchemeKind::kCircular) {
        for (double k : ks) cfg.curves.push_back(Scheme::circular(k));
      } else {
        cfg.curves.push_back({kind, 0.0});
      }
    }
  }
  return cfg;
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& m : table.meta) out << "# " << m << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

std::vector<DurationPoint> duration_vs_gamma(const SweepConfig& cfg) {
  validate(cfg);
  const double ceiling = first_ceiling(cfg);
  std::vector<DurationPoint> out;
  for (const auto& s : cfg.curves) {
    for (double g : cfg.gammas) {
      DurationPoint p{s.label(), g, std::nullopt, {}};
      try {
        p.tau = duration_for_ceiling(s, {g, 0.0, 0.0}, ceiling);
      } catch (const DomainError& e) {
        p.error = e.what();
      } catch (const NumericalError& e) {
        p.error = e.what();
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<EnvelopePoint> envelope_export(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<EnvelopePoint> out;
  for (const auto& c : fixed_tau_curves(cfg)) {
    if (!c.schedule) throw DomainError(fmt::format("curve {}: {}", c.label, c.error));
    for (const auto& s : c.schedule->samples) {
      out.push_back({c.label, c.schedule->tau, s.t, s.omega});
    }
  }
  return out;
}

std::vector<FidelityPoint> detuning_robustness(const SweepConfig& cfg) {
  validate(cfg);
  return sweep_curves(cfg, fixed_tau_curves(cfg), cfg.deltas,
                      [](double d) { return ErrorInjection{d, 0.0}; });
}

std::vector<FidelityPoint> rabi_robustness(const SweepConfig& cfg) {
  validate(cfg);
  return sweep_curves(cfg, fixed_tau_curves(cfg), cfg.eps,
                      [](double e) { return ErrorInjection{0.0, e}; });
}

std::vector<FidelityPoint> ceiling_robustness(const SweepConfig& cfg) {
  validate(cfg);
  const GateSpec gate = named_gate(cfg.gate).spec;
  std::vector<Curve> curves;
  for (double c : cfg.ceilings) {
    curves.push_back(build_curve(fmt::format("ceiling_mhz={}", num(units::rad_per_s_to_mhz(c))),
                                 Scheme::circular(1.0), gate, Timing::ceiling(c), cfg.n_samples));
  }
  return sweep_curves(cfg, curves, cfg.deltas, [](double d) { return ErrorInjection{d, 0.0}; });
}

Table run_campaign(const SweepConfig& cfg) {
  validate(cfg);
  Table t;
  t.meta.push_back(fmt::format("preset={}, campaign={}", cfg.preset, campaign_name(cfg.campaign)));
  t.meta.push_back(fmt::format("gate={}, curves={}, ceilings_mhz={}", named_gate(cfg.gate).name,
                               curve_list(cfg.curves),
                               join(cfg.ceilings, units::rad_per_s_to_mhz(1.0))));
  const bool dynamic = cfg.campaign == Campaign::kDetuningRobustness ||
                       cfg.campaign == Campaign::kRabiRobustness ||
                       cfg.campaign == Campaign::kCeilingRobustness;
  if (dynamic) {
    t.meta.push_back(fmt::format(
        "gamma1_khz={}, gamma2_khz={}, states={}x{}, n_steps={}, n_samples={}",
        num(units::rad_per_s_to_mhz(cfg.rates.gamma1) * 1e3),
        num(units::rad_per_s_to_mhz(cfg.rates.gamma2) * 1e3), cfg.grid.n_theta, cfg.grid.n_phi,
        cfg.grid.n_steps, cfg.n_samples));
    t.meta.push_back("error-axis ranges are configuration choices, not published values");
  }

  const auto fidelity_rows = [&](const std::vector<FidelityPoint>& pts, const char* x_name,
                                 double x_scale) {
    t.header = {"curve", "tau_ns", x_name, "avg_fidelity", "error"};
    for (const auto& p : pts) {
      t.rows.push_back({p.curve, p.error.empty() || p.tau > 0 ? num(units::s_to_ns(p.tau)) : "",
                        num(p.x * x_scale), p.fidelity ? fmt::format("{:.12f}", *p.fidelity) : "",
                        p.error.empty() ? "" : "ERROR: " + p.error});
    }
  };

  switch (cfg.campaign) {
    case Campaign::kDurationVsGamma:
      t.header = {"curve", "gamma_rad", "tau_ns", "error"};
      for (const auto& p : duration_vs_gamma(cfg)) {
        t.rows.push_back({p.curve, num(p.gamma), p.tau ? num(units::s_to_ns(*p.tau)) : "",
                          p.error.empty() ? "" : "ERROR: " + p.error});
      }
      break;
    case Campaign::kEnvelopeExport:
      t.header = {"gate", "curve", "tau_ns", "t_ns", "omega_mhz"};
      for (const auto& p : envelope_export(cfg)) {
        t.rows.push_back({std::string(named_gate(cfg.gate).name), p.curve,
                          num(units::s_to_ns(p.tau)), num(units::s_to_ns(p.t)),
                          num(units::rad_per_s_to_mhz(p.omega))});
      }
      break;
    case Campaign::kDetuningRobustness:
      fidelity_rows(detuning_robustness(cfg), "delta_mhz", units::rad_per_s_to_mhz(1.0));
      break;
    case Campaign::kRabiRobustness:
      fidelity_rows(rabi_robustness(cfg), "eps", 1.0);
      break;
    case Campaign::kCeilingRobustness:
      fidelity_rows(ceiling_robustness(cfg), "delta_mhz", units::rad_per_s_to_mhz(1.0));
      break;
  }
  // Error messages may contain commas; keep the CSV rectangular.
  for (auto& row : t.rows) {
    std::replace(row.back().begin(), row.back().end(), ',', ';');
  }
  return t;
}

void set_worker_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace nhqc
