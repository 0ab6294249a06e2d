#include "stam/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "stam/diagnostics.hpp"
#include "stam/robustness.hpp"

namespace stam {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

struct RunState {
  std::map<std::string, bool> checks;
  std::vector<std::string> artifacts;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_atomic(const std::string& dir, const std::string& name,
                  const std::string& content, RunState& state) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IOError("cannot create output directory " + dir);
  }
  const fs::path final_path = fs::path(dir) / name;
  const fs::path tmp_path = fs::path(dir) / (name + ".tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IOError("cannot open " + tmp_path.string());
    }
    out << content;
    if (!out) {
      throw IOError("short write to " + tmp_path.string());
    }
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) {
    throw IOError("cannot rename into place: " + final_path.string());
  }
  state.artifacts.push_back(name);
}

int grid_points(const RunConfig& cfg, int base) {
  const int n = static_cast<int>(std::lround(base * cfg.grid_scale));
  return std::max(2, n);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    out[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
  }
  return out;
}

// --- configured object builders -------------------------------------------

struct BuiltModel {
  std::string name;
  GaugeSpec spec;
  double omega = 1.0;  // frequency unit for *_per_omega keys
  LambdaModel lambda;  // valid when name == "lambda"
  CoupledQubitModel coupled;
};

Schedule schedule_from_config(const RunConfig& cfg) {
  const int N = cfg.get_int("schedule.N", 1);
  const double Theta_N = cfg.get_double("schedule.Theta_N", kPi / 2.0);
  if (N < 1) {
    throw ConfigError("schedule.N must be >= 1");
  }
  if (!(Theta_N > 0.0) || !std::isfinite(Theta_N)) {
    throw ConfigError("schedule.Theta_N must be positive and finite");
  }
  return make_schedule(N, Theta_N);
}

BuiltModel model_from_config(const RunConfig& cfg) {
  BuiltModel built;
  built.name = cfg.get_str("model", "lambda");
  if (built.name == "lambda") {
    LambdaModel m;
    m.k2 = cfg.get_int("lambda.k2", 0);
    m.k3 = cfg.get_int("lambda.k3", 0);
    m.t_p = cfg.get_double("lambda.t_p", kPi);
    m.phi = cfg.get_double("lambda.phi", 0.0);
    if (m.k2 < 0 || m.k3 < 0 || !(m.t_p > 0.0)) {
      throw ConfigError("lambda model needs k2, k3 >= 0 and t_p > 0");
    }
    built.lambda = m;
    built.spec = build_lambda(m);
    built.omega = m.Omega();
  } else if (built.name == "bosonic") {
    BosonicModel m;
    m.truncation = cfg.get_int("bosonic.truncation", 40);
    m.omega = cfg.get_double("bosonic.omega", 1.0);
    m.alpha = Complex(cfg.get_double("bosonic.alpha_re", 1.0),
                      cfg.get_double("bosonic.alpha_im", 0.0));
    if (m.truncation < 2 || !(m.omega > 0.0)) {
      throw ConfigError("bosonic model needs truncation >= 2 and omega > 0");
    }
    built.spec = build_bosonic(m).spec;
    built.omega = m.omega;
  } else if (built.name == "coupled") {
    CoupledQubitModel m;
    m.E = cfg.get_double("coupled.coupling_E", 1.0);
    const std::string interp = cfg.get_str("coupled.interpolation", "trig");
    if (interp == "trig") {
      m.interpolation = Interpolation::Trig;
    } else if (interp == "cot") {
      m.interpolation = Interpolation::Cot;
    } else {
      throw ConfigError("coupled.interpolation must be trig or cot");
    }
    if (!(m.E > 0.0)) {
      throw ConfigError("coupled model needs coupling_E > 0");
    }
    built.coupled = m;
    built.spec = build_coupled_qubits(m);
    built.omega = m.E;
  } else {
    throw ConfigError("unknown model '" + built.name + "'");
  }
  return built;
}

std::vector<ErrorChannel> channels_from_config(const RunConfig& cfg,
                                               double omega,
                                               std::uint64_t drift_seed) {
  std::vector<ErrorChannel> channels;
  if (cfg.has("error.amplitude_rel")) {
    channels.push_back(
        ErrorChannel::amplitude(cfg.get_double("error.amplitude_rel", 0.0)));
  }
  if (cfg.has("error.detuning_per_omega")) {
    channels.push_back(ErrorChannel::detuning(
        cfg.get_double("error.detuning_per_omega", 0.0) * omega));
  }
  if (cfg.has("error.phase_rel")) {
    channels.push_back(
        ErrorChannel::phase(cfg.get_double("error.phase_rel", 0.0)));
  }
  if (cfg.has("error.pauli_magnitude")) {
    channels.push_back(ErrorChannel::local_pauli(
        cfg.get_int("error.pauli_site", 0), cfg.get_int("error.pauli_axis", 0),
        cfg.get_double("error.pauli_magnitude", 0.0)));
  }
  if (cfg.has("drift.tau_c") || cfg.has("drift.variance")) {
    const double tau_c = cfg.get_double("drift.tau_c", 1.0);
    const double variance = cfg.get_double("drift.variance", 0.0);
    if (!(tau_c > 0.0) || variance < 0.0) {
      throw ConfigError("drift needs tau_c > 0 and variance >= 0");
    }
    channels.push_back(ErrorChannel::drift(tau_c, variance, drift_seed));
  }
  return channels;
}

LindbladModel noise_from_config(const RunConfig& cfg, double omega) {
  const double ge = cfg.get_double("noise.gamma_e_per_omega", 1.5 / (2.0 * kPi));
  const double gd =
      cfg.get_double("noise.gamma_dep_per_omega", 0.05 / (2.0 * kPi));
  if (ge < 0.0 || gd < 0.0) {
    throw ConfigError("noise rates must be >= 0");
  }
  return lambda_noise(ge * omega, gd * omega);
}

void check_checkpoints(const GaugeSpec& spec, const PulseSequence& seq,
                       RunState& state) {
  bool ok = true;
  for (double theta : seq.theta_checkpoints) {
    const Operator u = propagator_until(seq, theta);
    const Operator u_adia = adiabatic_target(spec, seq, theta);
    if (op_fidelity(u_adia, u) < 1.0 - 1e-10) {
      ok = false;
    }
  }
  state.checks["checkpoint_identity"] = ok;
}

// --- fig3 helpers ----------------------------------------------------------

double stam_coupled_fidelity(const CoupledQubitModel& m, double eps_x) {
  GaugeSpec spec = build_coupled_qubits(m);
  PulseSequence seq = compile(spec, make_schedule(1, kPi / 4.0));
  if (eps_x != 0.0) {
    seq = apply_channel(seq, ErrorChannel::local_pauli(0, 0, eps_x * m.E));
  }
  const StateVector psi =
      propagate_unitary(seq, StateVector(spec.initial_basis.col(0)));
  return state_fidelity(psi, psi_plus());
}

double ramp_coupled_fidelity(const CoupledQubitModel& m, double ET,
                             double eps_x, bool convergence_check) {
  const Matrix h0 = coupled_h0(m.E);
  const Matrix h1 = coupled_h1(m.E);
  const Matrix pert = eps_x * m.E * pauli_on_site(2, 0, 0);
  RampSpec ramp;
  ramp.total_time = ET / m.E;
  ramp.convergence_check = convergence_check;
  const HamiltonianFamily h_of_s = [&](double s) -> Matrix {
    return (1.0 - s) * h0 + s * h1 + pert;
  };
  Vector start = Vector::Zero(4);
  start(3) = 1.0;  // |11>
  const StateVector psi = propagate_ramp(ramp, h_of_s, StateVector(start));
  return state_fidelity(psi, psi_plus());
}

// --- subcommands -----------------------------------------------------------

void cmd_compile(const RunConfig& cfg, RunState& state) {
  const BuiltModel built = model_from_config(cfg);
  const Schedule sched = schedule_from_config(cfg);
  const PulseSequence seq = compile(built.spec, sched);
  check_checkpoints(built.spec, seq, state);

  std::string csv;
  if (built.name == "lambda") {
    csv = "pulse,lambda,duration,omega_s,omega_p\n";
    for (size_t j = 0; j < seq.pulses.size(); ++j) {
      const double lj = seq.pulses[j].lambda;
      csv += std::to_string(j + 1) + "," + num(lj) + "," +
             num(seq.pulses[j].duration) + "," +
             num(stokes_amplitude(built.lambda, lj)) + "," +
             num(pump_amplitude(built.lambda, lj)) + "\n";
    }
  } else {
    csv = "pulse,lambda,duration\n";
    for (size_t j = 0; j < seq.pulses.size(); ++j) {
      csv += std::to_string(j + 1) + "," + num(seq.pulses[j].lambda) + "," +
             num(seq.pulses[j].duration) + "\n";
    }
  }
  write_atomic(cfg.out_dir, "pulses.csv", csv, state);
  write_atomic(cfg.out_dir, "gauge.txt", serialize_gauge_spec(built.spec, sched),
               state);
  write_atomic(cfg.out_dir, "sequence.txt", serialize_pulse_sequence(seq),
               state);
}

void cmd_simulate(const RunConfig& cfg, RunState& state) {
  const BuiltModel built = model_from_config(cfg);
  const Schedule sched = schedule_from_config(cfg);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  const PulseSequence ideal = compile(built.spec, sched);
  const std::vector<ErrorChannel> channels =
      channels_from_config(cfg, built.omega, seed);
  const PulseSequence seq = apply_channels(ideal, channels);
  if (channels.empty()) {
    check_checkpoints(built.spec, seq, state);
  }

  std::string csv = "Theta,op_fidelity,state_fidelity\n";
  const StateVector psi0(built.spec.initial_basis.col(0));
  for (double theta : ideal.theta_checkpoints) {
    const Operator u = propagator_until(seq, theta);
    const Operator u_adia = adiabatic_target(built.spec, ideal, theta);
    const StateVector psi{u.entries * psi0.amplitudes};
    const double fid =
        state_fidelity(psi, eigenstate_at(built.spec, theta, 0));
    csv += num(theta) + "," + num(op_fidelity(u_adia, u)) + "," + num(fid) +
           "\n";
  }
  write_atomic(cfg.out_dir, "simulate.csv", csv, state);
}

void cmd_lindblad(const RunConfig& cfg, RunState& state) {
  const BuiltModel built = model_from_config(cfg);
  if (built.name != "lambda") {
    throw ConfigError("lindblad gate merit is defined for the lambda model");
  }
  const Schedule sched = schedule_from_config(cfg);
  const LindbladModel noise = noise_from_config(cfg, built.omega);
  const double merit =
      lambda_gate_merit(built.lambda, sched.N, sched.Theta_N, noise);
  state.checks["trace_preservation"] = true;  // propagation throws otherwise

  std::string csv =
      "N,Theta_N,gamma_e_per_omega,gamma_dep_per_omega,merit\n";
  csv += std::to_string(sched.N) + "," + num(sched.Theta_N) + "," +
         num(cfg.get_double("noise.gamma_e_per_omega", 1.5 / (2.0 * kPi))) +
         "," +
         num(cfg.get_double("noise.gamma_dep_per_omega", 0.05 / (2.0 * kPi))) +
         "," + num(merit) + "\n";
  write_atomic(cfg.out_dir, "lindblad.csv", csv, state);
}

struct ScanAxis {
  std::string channel;
  std::vector<double> values;
};

ScanAxis axis_from_config(const RunConfig& cfg, const std::string& prefix) {
  ScanAxis axis;
  axis.channel = cfg.require_str(prefix + ".channel");
  if (axis.channel != "amplitude_rel" && axis.channel != "detuning_per_omega" &&
      axis.channel != "phase_rel") {
    throw ConfigError(prefix + ".channel must be amplitude_rel, "
                      "detuning_per_omega or phase_rel");
  }
  const double lo = cfg.get_double(prefix + ".min", 0.0);
  const double hi = cfg.get_double(prefix + ".max", 0.0);
  const int points = grid_points(cfg, cfg.get_int(prefix + ".points", 11));
  if (!(hi >= lo)) {
    throw ConfigError(prefix + " needs max >= min");
  }
  axis.values = linspace(lo, hi, points);
  return axis;
}

ErrorChannel channel_for_axis(const std::string& channel, double value,
                              double omega) {
  if (channel == "amplitude_rel") return ErrorChannel::amplitude(value);
  if (channel == "detuning_per_omega")
    return ErrorChannel::detuning(value * omega);
  return ErrorChannel::phase(value);
}

void cmd_scan(const RunConfig& cfg, RunState& state) {
  const BuiltModel built = model_from_config(cfg);
  if (built.name != "lambda") {
    throw ConfigError("scan transfer merit is defined for the lambda model");
  }
  const std::string merit_name = cfg.get_str("scan.merit", "transfer");
  if (merit_name != "transfer") {
    throw ConfigError("scan.merit must be transfer");
  }
  const Schedule sched = schedule_from_config(cfg);
  const std::uint64_t seed = cfg.get_u64("seed", 0);

  std::vector<ScanAxis> axes = {axis_from_config(cfg, "scan.axis1")};
  if (cfg.has("scan.axis2.channel")) {
    axes.push_back(axis_from_config(cfg, "scan.axis2"));
  }
  std::vector<std::string> names;
  std::vector<std::vector<double>> grids;
  for (const ScanAxis& a : axes) {
    names.push_back(a.channel);
    grids.push_back(a.values);
  }

  const LambdaModel lm = built.lambda;
  const double omega = built.omega;
  const int N = sched.N;
  const bool has_drift = cfg.has("drift.tau_c") || cfg.has("drift.variance");
  const MeritFn merit = [&](const std::vector<double>& point,
                            std::uint64_t point_seed) {
    std::vector<ErrorChannel> channels;
    for (size_t a = 0; a < axes.size(); ++a) {
      channels.push_back(channel_for_axis(axes[a].channel, point[a], omega));
    }
    if (has_drift) {
      channels.push_back(ErrorChannel::drift(cfg.get_double("drift.tau_c", 1.0),
                                             cfg.get_double("drift.variance", 0.0),
                                             point_seed));
    }
    return transfer_efficiency(lm, N, channels);
  };
  const ScanResult result = sweep(
      names, grids, merit, seed,
      {{"model", built.name}, {"N", std::to_string(N)}});
  write_atomic(cfg.out_dir, "scan.csv", result.to_csv(), state);
}

void cmd_bound(const RunConfig& cfg, RunState& state) {
  const BuiltModel built = model_from_config(cfg);
  const Schedule sched = schedule_from_config(cfg);
  const PulseSequence seq = compile(built.spec, sched);
  check_checkpoints(built.spec, seq, state);

  const int points = grid_points(cfg, cfg.get_int("bound.num_lambda", 20));
  std::string csv = BoundReport::csv_header() + "\n";
  for (int k = 1; k <= points; ++k) {
    const double lambda = sched.Theta_N * k / points;
    csv += bound_report(built.spec, seq, lambda).csv_row() + "\n";
  }
  write_atomic(cfg.out_dir, "bound.csv", csv, state);
}

void cmd_ramp(const RunConfig& cfg, RunState& state) {
  const BuiltModel built = model_from_config(cfg);
  if (built.name != "coupled") {
    throw ConfigError("ramp comparison is defined for the coupled model");
  }
  const double ET = cfg.get_double("ramp.total_time_E", 100.0);
  const double eps_x = cfg.get_double("ramp.local_error_x_per_E", 0.0);
  if (!(ET > 0.0)) {
    throw ConfigError("ramp.total_time_E must be > 0");
  }
  const double ramp_fid =
      ramp_coupled_fidelity(built.coupled, ET, eps_x, true);
  const double stam_fid = stam_coupled_fidelity(built.coupled, eps_x);
  state.checks["grid_doubling_stability"] = true;  // throws otherwise

  std::string csv = "E_times_T,fidelity,method\n";
  csv += num(ET) + "," + num(ramp_fid) + ",ramp\n";
  csv += num(kPi / 2.0) + "," + num(stam_fid) + ",stam\n";
  write_atomic(cfg.out_dir, "ramp.csv", csv, state);
}

void cmd_figure(const RunConfig& cfg, RunState& state) {
  const std::string tag = cfg.require_str("figure.tag");
  if (tag == "fig2c") {
    const double ge =
        cfg.get_double("noise.gamma_e_per_omega", 1.5 / (2.0 * kPi));
    const double gd =
        cfg.get_double("noise.gamma_dep_per_omega", 0.05 / (2.0 * kPi));
    std::string csv = "delta_per_omega,k3,merit\n";
    for (int k3 = 0; k3 <= 13; ++k3) {
      // Omega normalized to 1 via t_p = pi sqrt(2 k3 + 1), k2 = 0.
      LambdaModel m;
      m.k3 = k3;
      m.t_p = kPi * std::sqrt(2.0 * k3 + 1.0);
      const double merit =
          lambda_gate_merit(m, 1, kPi / 2.0, lambda_noise(ge, gd));
      csv += num(m.Delta() / m.Omega()) + "," + std::to_string(k3) + "," +
             num(merit) + "\n";
    }
    write_atomic(cfg.out_dir, "fig2c.csv", csv, state);
  } else if (tag == "fig2d") {
    const int points = grid_points(cfg, 51);
    const std::vector<double> grid = linspace(-0.15, 0.15, points);
    const LambdaModel m;  // k2 = k3 = 0, t_p = pi: Omega = 1
    std::string csv = "eps_amplitude_rel,eps_detuning_per_omega,N,efficiency\n";
    for (int N = 1; N <= 4; ++N) {
      for (double ea : grid) {
        for (double ed : grid) {
          const double eff = transfer_efficiency(
              m, N,
              {ErrorChannel::amplitude(ea),
               ErrorChannel::detuning(ed * m.Omega())});
          csv += num(ea) + "," + num(ed) + "," + std::to_string(N) + "," +
                 num(eff) + "\n";
        }
      }
    }
    write_atomic(cfg.out_dir, "fig2d.csv", csv, state);
  } else if (tag == "fig3b") {
    const CoupledQubitModel m;
    const int points = grid_points(cfg, 25);
    const std::vector<double> ETs = linspace(2.0, 100.0, points);
    std::string csv = "E_times_T,fidelity,method\n";
    for (size_t k = 0; k < ETs.size(); ++k) {
      const double fid = ramp_coupled_fidelity(m, ETs[k], 0.0, k == 0);
      csv += num(ETs[k]) + "," + num(fid) + ",ramp\n";
    }
    csv += num(kPi / 2.0) + "," + num(stam_coupled_fidelity(m, 0.0)) +
           ",stam\n";
    state.checks["grid_doubling_stability"] = true;
    write_atomic(cfg.out_dir, "fig3b.csv", csv, state);
  } else if (tag == "fig3c" || tag == "fig3d") {
    const CoupledQubitModel m;
    const int points = grid_points(cfg, 21);
    const std::vector<double> eps = linspace(0.0, 0.1, points);
    std::string csv = "eps_x_per_E,fidelity,method\n";
    if (tag == "fig3c") {
      for (double e : eps) {
        csv += num(e) + "," + num(stam_coupled_fidelity(m, e)) + ",stam\n";
      }
    } else {
      const double ET = cfg.get_double("ramp.total_time_E", 100.0);
      for (size_t k = 0; k < eps.size(); ++k) {
        const double fid = ramp_coupled_fidelity(m, ET, eps[k], k == 0);
        csv += num(eps[k]) + "," + num(fid) + ",ramp\n";
      }
    }
    write_atomic(cfg.out_dir, tag + ".csv", csv, state);
  } else {
    throw ConfigError("unknown figure tag '" + tag + "'");
  }
}

void dispatch(const RunConfig& cfg, RunState& state) {
  if (cfg.command == "compile") {
    cmd_compile(cfg, state);
  } else if (cfg.command == "simulate") {
    cmd_simulate(cfg, state);
  } else if (cfg.command == "lindblad") {
    cmd_lindblad(cfg, state);
  } else if (cfg.command == "scan") {
    cmd_scan(cfg, state);
  } else if (cfg.command == "bound") {
    cmd_bound(cfg, state);
  } else if (cfg.command == "ramp") {
    cmd_ramp(cfg, state);
  } else if (cfg.command == "figure") {
    cmd_figure(cfg, state);
  } else {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
}

}  // namespace

int run(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  RunState state;
  int exit_code = 0;
  std::string error;
  try {
    dispatch(config, state);
  } catch (const ConfigError& e) {
    exit_code = 2;
    error = e.what();
  } catch (const IOError& e) {
    exit_code = 4;
    error = e.what();
  } catch (const std::exception& e) {
    // Domain and numerical failures surface as "checks did not pass".
    exit_code = 3;
    error = e.what();
  }
  for (const auto& [name, pass] : state.checks) {
    if (!pass && exit_code == 0) {
      exit_code = 3;
      error = "check failed: " + name;
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  json manifest;
  manifest["version"] = kVersion;
  manifest["command"] = config.command;
  manifest["config"] = config.kv;
  manifest["out_dir"] = config.out_dir;
  manifest["grid_scale"] = config.grid_scale;
  manifest["duration_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  manifest["checks"] = state.checks;
  manifest["artifacts"] = state.artifacts;
  manifest["status"] = exit_code == 0 ? "ok" : "error";
  if (!error.empty()) {
    manifest["error"] = error;
  }
  try {
    RunState manifest_state;
    write_atomic(config.out_dir, "run_manifest.json", manifest.dump(2) + "\n",
                 manifest_state);
  } catch (const IOError&) {
    return 4;
  }
  if (exit_code != 0 && !error.empty()) {
    std::fprintf(stderr, "%s\n", error.c_str());
  }
  return exit_code;
}

}  // namespace stam
