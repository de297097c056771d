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

#include "nhqc/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nhqc/common.hpp"
#include "nhqc/experiments.hpp"
#include "nhqc/gates.hpp"
#include "nhqc/schedule_io.hpp"

namespace nhqc {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_rad(double v, bool degrees) { return degrees ? v * kPi / 180.0 : v; }

// Flags shared by `synth` and the inline form of `evolve`.
struct PulseFlags {
  std::string scheme;
  std::string gate;
  std::optional<double> gamma;
  double theta = 0.0;
  double phi = 0.0;
  double k = 1.0;
  double ceiling_mhz = 10.0;
  std::optional<double> tau_ns;
  int samples = kDefaultSamples;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--scheme", scheme, "circular | oss | snhqc | square");
    cmd->add_option("--gate", gate, "named gate (T, S, NOT, Hadamard) instead of angles");
    cmd->add_option("--gamma", gamma, "geometric phase");
    cmd->add_option("--theta", theta, "rotation-axis polar angle");
    cmd->add_option("--phi", phi, "rotation-axis azimuth");
    cmd->add_option("--k", k, "circular profile exponent");
    cmd->add_option("--ceiling", ceiling_mhz, "peak Rabi frequency (MHz)");
    cmd->add_option("--tau", tau_ns, "fixed duration (ns); overrides --ceiling");
    cmd->add_option("--samples", samples, "schedule samples");
  }

  PulseSchedule build(bool degrees) const {
    if (scheme.empty()) throw UsageError("--scheme is required");
    const auto kind = parse_scheme(scheme);
    if (!kind) throw UsageError(fmt::format("unknown scheme '{}'", scheme));
    GateSpec spec;
    if (!gate.empty()) {
      const auto g = parse_gate(gate);
      if (!g) throw UsageError(fmt::format("unknown gate '{}'", gate));
      if (gamma) throw UsageError("--gate and --gamma are exclusive");
      spec = g->spec;
    } else {
      if (!gamma) throw UsageError("--gamma (or --gate) is required");
      spec = {to_rad(*gamma, degrees), to_rad(theta, degrees), to_rad(phi, degrees)};
    }
    const Scheme s = *kind == SchemeKind::kCircular ? Scheme::circular(k) : Scheme{*kind, 0.0};
    const Timing timing = tau_ns ? Timing::duration(units::ns_to_s(*tau_ns))
                                 : Timing::ceiling(units::mhz_to_rad_per_s(ceiling_mhz));
    return synthesize(s, spec, timing, samples);
  }
};

void write_kv(std::ostream& out, std::string_view key, double value) {
  out << key << ',' << fmt::format("{:.12g}", value) << '\n';
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& out) {
  if (path.empty() || path == "-") return out;
  file.open(path);
  if (!file) throw UsageError(fmt::format("cannot open '{}' for writing", path));
  return file;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-adiabatic holonomic gate synthesis and simulation", "nhqc"};
  app.require_subcommand(1);
  app.fallthrough();
  bool degrees = false;
  int jobs = 0;
  app.add_flag("--degrees", degrees, "angles are in degrees instead of radians");
  app.add_option("--jobs", jobs, "worker threads (0: runtime default)")->envname("NHQC_JOBS");

  // synth
  auto* synth = app.add_subcommand("synth", "write a pulse schedule as CSV");
  PulseFlags synth_flags;
  synth_flags.add_to(synth);
  std::string synth_out;
  synth->add_option("-o,--output", synth_out, "output file (default stdout)");

  // evolve
  auto* evolve = app.add_subcommand("evolve", "simulate one schedule");
  PulseFlags evolve_flags;
  evolve_flags.add_to(evolve);
  std::string schedule_path;
  double theta0 = 0.0, phi0 = 0.0, delta_mhz = 0.0, eps = 0.0;
  double gamma1_mhz = 0.0, gamma2_mhz = 0.0;
  bool average = false, superconducting = false;
  int steps = kDefaultSteps, n_theta = 11, n_phi = 91;
  evolve->add_option("--schedule", schedule_path, "schedule CSV written by synth");
  evolve->add_option("--theta0", theta0, "initial state cos(theta0)|0> + sin(theta0)e^{i phi0}|1>");
  evolve->add_option("--phi0", phi0, "initial-state phase");
  evolve->add_flag("--average", average, "average fidelity over the initial-state grid");
  evolve->add_option("--n-theta", n_theta, "grid theta0 points (with --average)");
  evolve->add_option("--n-phi", n_phi, "grid phi0 points (with --average)");
  evolve->add_option("--delta", delta_mhz, "static detuning error (MHz)");
  evolve->add_option("--eps", eps, "relative Rabi error");
  evolve->add_option("--gamma1", gamma1_mhz, "decay rate (MHz)");
  evolve->add_option("--gamma2", gamma2_mhz, "dephasing rate (MHz)");
  evolve->add_flag("--superconducting", superconducting, "Gamma1 = Gamma2 = 3 kHz");
  evolve->add_option("--steps", steps, "RK4 steps");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a campaign (fig3 ... fig7)");
  std::string preset_name, gate_name = "T", config_path, sweep_out;
  std::string k_list, delta_list, eps_list, gamma_list, ceiling_list;
  bool reduced = false;
  int sweep_steps = 0, sweep_theta = 0, sweep_phi = 0;
  sweep->add_option("--preset", preset_name, "fig3 | fig4 | fig5 | fig6 | fig7");
  sweep->add_option("--gate", gate_name, "named gate for fig4-fig7");
  sweep->add_option("--config", config_path, "key = value campaign file");
  sweep->add_flag("--reduced", reduced, "11x11 states, 11-point error grids");
  sweep->add_option("-o,--output", sweep_out, "output file (default stdout)");
  sweep->add_option("--k", k_list, "circular k list");
  sweep->add_option("--delta-mhz", delta_list, "detuning grid, list or start:stop:count");
  sweep->add_option("--eps", eps_list, "Rabi-error grid");
  sweep->add_option("--gamma-grid", gamma_list, "phase grid (rad)");
  sweep->add_option("--ceiling-mhz", ceiling_list, "ceiling list (MHz)");
  sweep->add_option("--steps", sweep_steps, "RK4 steps");
  sweep->add_option("--n-theta", sweep_theta, "grid theta0 points");
  sweep->add_option("--n-phi", sweep_phi, "grid phi0 points");

  // named-gates
  auto* named = app.add_subcommand("named-gates", "list the named gates");
  double named_ceiling = 10.0;
  named->add_option("--ceiling", named_ceiling, "peak Rabi frequency (MHz) for tau_ns");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      err << app.help();
      return kExitOk;
    }
    err << "nhqc: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    set_worker_count(jobs);

    if (*synth) {
      const PulseSchedule s = synth_flags.build(degrees);
      std::ofstream file;
      write_schedule_csv(open_output(synth_out, file, out), s);
      err << fmt::format("tau_ns={:.6f} peak_omega_mhz={:.6f}\n", units::s_to_ns(s.tau),
                         units::rad_per_s_to_mhz(s.peak_omega()));
      return kExitOk;
    }

    if (*evolve) {
      PulseSchedule s = [&] {
        if (schedule_path.empty()) return evolve_flags.build(degrees);
        std::ifstream in(schedule_path);
        if (!in) throw UsageError(fmt::format("cannot open '{}'", schedule_path));
        return read_schedule_csv(in);
      }();
      const ErrorInjection error{units::mhz_to_rad_per_s(delta_mhz), eps};
      const DecoherenceRates rates =
          superconducting ? DecoherenceRates::superconducting()
                          : DecoherenceRates{units::mhz_to_rad_per_s(gamma1_mhz),
                                             units::mhz_to_rad_per_s(gamma2_mhz)};
      err << fmt::format("scheme={} tau_ns={:.6f}\n", s.scheme().label(), units::s_to_ns(s.tau));
      out << "quantity,value\n";
      if (average) {
        const NamedGate target{GateId::kT, "custom", s.gate};
        const double f = average_fidelity(target, s, error, rates, {n_theta, n_phi, steps});
        write_kv(out, "avg_fidelity", f);
        write_kv(out, "states", static_cast<double>(n_theta) * n_phi);
        return kExitOk;
      }
      const InitialState st{to_rad(theta0, degrees), to_rad(phi0, degrees)};
      const Vector4 psi0 = st.vector();
      const Vector4 goal = embed(target_unitary(s.gate) * Vector2(psi0(kLevel0), psi0(kLevel1)));
      const HamiltonianTable table(s, error, steps);
      TrajectoryDiagnostics diag;
      const DensityMatrix rho =
          evolve_lindblad(DensityMatrix::pure(psi0), table, LindbladKernel(rates), &diag);
      write_kv(out, "pop_0", rho.population(kLevel0));
      write_kv(out, "pop_1", rho.population(kLevel1));
      write_kv(out, "pop_e", rho.population(kLevelE));
      write_kv(out, "pop_h", rho.population(kLevelH));
      write_kv(out, "fidelity", state_fidelity(rho, goal));
      write_kv(out, "trace_drift", diag.max_trace_drift);
      write_kv(out, "hermiticity_drift", diag.max_hermiticity_drift);
      write_kv(out, "min_eigenvalue", diag.min_eigenvalue);
      return kExitOk;
    }

    if (*sweep) {
      const auto g = parse_gate(gate_name);
      if (!g) throw UsageError(fmt::format("unknown gate '{}'", gate_name));
      if (preset_name.empty() && config_path.empty()) {
        throw UsageError("sweep needs --preset or --config");
      }
      SweepConfig cfg;
      cfg.gate = g->id;
      if (!preset_name.empty()) cfg = preset(preset_name, g->id, reduced);
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError(fmt::format("cannot open '{}'", config_path));
        cfg = parse_config(in, cfg);
      }
      // Command-line overrides use the config syntax.
      std::ostringstream overrides;
      const auto put = [&](const char* key, const std::string& v) {
        if (!v.empty()) overrides << key << " = " << v << '\n';
      };
      put("k", k_list);
      put("delta_mhz", delta_list);
      put("eps", eps_list);
      put("gamma", gamma_list);
      put("ceiling_mhz", ceiling_list);
      if (sweep_steps > 0) put("n_steps", std::to_string(sweep_steps));
      if (sweep_theta > 0) put("n_theta", std::to_string(sweep_theta));
      if (sweep_phi > 0) put("n_phi", std::to_string(sweep_phi));
      if (!sweep_out.empty()) put("output", sweep_out);
      std::istringstream over_in(overrides.str());
      cfg = parse_config(over_in, cfg);

      const Table table = run_campaign(cfg);
      std::ofstream file;
      write_csv(open_output(cfg.output, file, out), table);
      err << fmt::format("{}: {} rows\n", cfg.preset, table.rows.size());
      return kExitOk;
    }

    if (*named) {
      out << "gate,gamma_rad,theta_rad,phi_rad,tau_ns_k1\n";
      for (const auto& g : all_named_gates()) {
        const double tau = duration_for_ceiling(Scheme::circular(1.0), g.spec,
                                                units::mhz_to_rad_per_s(named_ceiling));
        out << fmt::format("{},{:.12g},{:.12g},{:.12g},{:.6f}\n", g.name, g.spec.gamma,
                           g.spec.theta, g.spec.phi, units::s_to_ns(tau));
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "nhqc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "nhqc: domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "nhqc: numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace nhqc
