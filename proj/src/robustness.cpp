#include "stam/robustness.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace stam {

ErrorChannel ErrorChannel::amplitude(double m) {
  ErrorChannel ch;
  ch.kind = ChannelKind::AmplitudeRelative;
  ch.magnitude = m;
  return ch;
}

ErrorChannel ErrorChannel::detuning(double m) {
  ErrorChannel ch;
  ch.kind = ChannelKind::DetuningAdditive;
  ch.magnitude = m;
  return ch;
}

ErrorChannel ErrorChannel::phase(double delta_e) {
  ErrorChannel ch;
  ch.kind = ChannelKind::PhaseRelative;
  ch.magnitude = delta_e;
  return ch;
}

ErrorChannel ErrorChannel::local_pauli(int site, int axis, double m) {
  ErrorChannel ch;
  ch.kind = ChannelKind::LocalPauli;
  ch.site = site;
  ch.axis = axis;
  ch.magnitude = m;
  return ch;
}

ErrorChannel ErrorChannel::drift(double correlation_time, double variance,
                                 std::uint64_t seed) {
  ErrorChannel ch;
  ch.kind = ChannelKind::StochasticDrift;
  ch.correlation_time = correlation_time;
  ch.variance = variance;
  ch.seed = seed;
  return ch;
}

namespace {

// splitmix64; decorrelates child streams from (master, index).
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stationary OU path on a fixed grid: beta_0 ~ N(0, var), exact
/// discrete-time update with decay exp(-dt / tau_c).
std::vector<double> ou_path(std::mt19937_64& rng, double tau_c, double variance,
                            double dt, int steps) {
  std::normal_distribution<double> unit(0.0, 1.0);
  const double sigma = std::sqrt(variance);
  const double decay = std::exp(-dt / tau_c);
  const double kick = sigma * std::sqrt(1.0 - decay * decay);
  std::vector<double> beta(steps);
  double b = sigma * unit(rng);
  for (int k = 0; k < steps; ++k) {
    beta[k] = b;
    b = decay * b + kick * unit(rng);
  }
  return beta;
}

}  // namespace

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return mix(mix(master) ^ mix(index + 0x51ed2701ULL));
}

PulseSequence apply_channel(const PulseSequence& seq, const ErrorChannel& ch) {
  if (!std::isfinite(ch.magnitude)) {
    throw InvalidArgument("channel magnitude must be finite");
  }
  PulseSequence out = seq;
  switch (ch.kind) {
    case ChannelKind::AmplitudeRelative:
      for (Pulse& p : out.pulses) {
        Matrix h = p.hamiltonian.entries;
        const Matrix diag = h.diagonal().asDiagonal();
        h = (1.0 + ch.magnitude) * (h - diag) + diag;
        p.hamiltonian = Operator(std::move(h), true);
      }
      break;
    case ChannelKind::DetuningAdditive: {
      if (seq.detuning_op.size() == 0) {
        throw ChannelNotApplicable("model declares no detuning operator");
      }
      for (Pulse& p : out.pulses) {
        p.hamiltonian = Operator(
            p.hamiltonian.entries + ch.magnitude * seq.detuning_op, true);
      }
      break;
    }
    case ChannelKind::PhaseRelative:
      for (Pulse& p : out.pulses) {
        p.duration *= (1.0 + ch.magnitude);
      }
      out.total_time = 0.0;
      for (const Pulse& p : out.pulses) out.total_time += p.duration;
      break;
    case ChannelKind::LocalPauli: {
      if (seq.n_qubits < 1) {
        throw ChannelNotApplicable("local_pauli needs a qubit register");
      }
      const Matrix pert =
          ch.magnitude * pauli_on_site(seq.n_qubits, ch.site, ch.axis);
      for (Pulse& p : out.pulses) {
        p.hamiltonian = Operator(p.hamiltonian.entries + pert, true);
      }
      break;
    }
    case ChannelKind::StochasticDrift: {
      if (seq.detuning_op.size() == 0) {
        throw ChannelNotApplicable("stochastic drift needs a detuning operator");
      }
      if (ch.variance < 0.0) {
        throw InvalidArgument("drift variance must be >= 0");
      }
      std::mt19937_64 rng(ch.seed);
      // Each pulse is split into 100 sub-segments sampled from the OU path.
      const int sub = 100;
      std::vector<Pulse> pulses;
      for (const Pulse& p : out.pulses) {
        const double dt = p.duration / sub;
        const std::vector<double> beta =
            ou_path(rng, ch.correlation_time, ch.variance, dt, sub);
        for (int k = 0; k < sub; ++k) {
          Pulse piece = p;
          piece.duration = dt;
          piece.hamiltonian = Operator(
              p.hamiltonian.entries + beta[k] * seq.detuning_op, true);
          pulses.push_back(std::move(piece));
        }
      }
      // level_energies stay per original pulse; drift pieces inherit them.
      std::vector<std::vector<double>> energies;
      for (size_t j = 0; j < out.level_energies.size(); ++j) {
        for (int k = 0; k < sub; ++k) energies.push_back(out.level_energies[j]);
      }
      out.pulses = std::move(pulses);
      out.level_energies = std::move(energies);
      break;
    }
  }
  return out;
}

PulseSequence apply_channels(const PulseSequence& seq,
                             const std::vector<ErrorChannel>& channels) {
  PulseSequence out = seq;
  for (const ErrorChannel& ch : channels) {
    out = apply_channel(out, ch);
  }
  return out;
}

double transfer_efficiency(const LambdaModel& model, int N,
                           const std::vector<ErrorChannel>& channels) {
  const GaugeSpec spec = build_lambda(model);
  const Schedule sched = make_schedule(N, 3.14159265358979323846 / 2.0);
  const PulseSequence seq = apply_channels(compile(spec, sched), channels);
  const Operator u = propagator_of(seq);
  return std::norm(u.entries(1, 0));  // |<0|U|1>|^2, lab order {|1>,|0>,|e>}
}

LindbladModel lambda_noise(double gamma_e, double gamma_dep) {
  LindbladModel noise;
  // Gamma_e decays |e> into the qubit subspace, split equally.
  Matrix to1 = Matrix::Zero(3, 3), to0 = Matrix::Zero(3, 3);
  to1(0, 2) = 1.0;
  to0(1, 2) = 1.0;
  noise.collapse_ops.emplace_back(to1, gamma_e / 2.0);
  noise.collapse_ops.emplace_back(to0, gamma_e / 2.0);
  // Dephasing on the qubit states: |1><1| - |0><0|.
  Matrix deph = Matrix::Zero(3, 3);
  deph(0, 0) = 1.0;
  deph(1, 1) = -1.0;
  noise.collapse_ops.emplace_back(deph, gamma_dep);
  return noise;
}

double lambda_gate_merit(const LambdaModel& model, int N, double Theta_N,
                         const LindbladModel& noise) {
  const GaugeSpec spec = build_lambda(model);
  const PulseSequence seq = compile(spec, make_schedule(N, Theta_N));
  const Operator gate = lambda_target_gate(N, Theta_N, model.phi);

  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Vector> axis_states;
  for (int k = 0; k < 6; ++k) {
    Vector psi = Vector::Zero(3);
    switch (k) {
      case 0: psi(0) = 1.0; break;
      case 1: psi(1) = 1.0; break;
      case 2: psi(0) = r; psi(1) = r; break;
      case 3: psi(0) = r; psi(1) = -r; break;
      case 4: psi(0) = r; psi(1) = i * r; break;
      default: psi(0) = r; psi(1) = -i * r; break;
    }
    axis_states.push_back(std::move(psi));
  }
  double total = 0.0;
  for (const Vector& psi : axis_states) {
    const DensityMatrix rho =
        propagate_lindblad(seq, DensityMatrix(psi * psi.adjoint()), noise);
    Vector target = Vector::Zero(3);
    target.head(2) = gate.entries * psi.head(2);
    total += (target.adjoint() * rho.entries * target)(0, 0).real();
  }
  return total / 6.0;
}

std::string ScanResult::to_csv() const {
  std::string out;
  for (const auto& name : axis_names) {
    out += name + ",";
  }
  out += "merit,model,N,seed\n";
  const std::string model = metadata.count("model") ? metadata.at("model") : "";
  const std::string n = metadata.count("N") ? metadata.at("N") : "";
  const std::string seed = metadata.count("seed") ? metadata.at("seed") : "0";
  std::vector<size_t> idx(axes.size(), 0);
  for (size_t flat = 0; flat < values.size(); ++flat) {
    size_t rem = flat;
    std::string row;
    for (size_t a = axes.size(); a-- > 0;) {
      idx[a] = rem % axes[a].size();
      rem /= axes[a].size();
    }
    char buf[64];
    for (size_t a = 0; a < axes.size(); ++a) {
      std::snprintf(buf, sizeof(buf), "%.12g,", axes[a][idx[a]]);
      row += buf;
    }
    std::snprintf(buf, sizeof(buf), "%.12g", values[flat]);
    row += buf;
    out += row + "," + model + "," + n + "," + seed + "\n";
  }
  return out;
}

ScanResult sweep(const std::vector<std::string>& axis_names,
                 const std::vector<std::vector<double>>& axes,
                 const MeritFn& merit, std::uint64_t master_seed,
                 std::map<std::string, std::string> metadata) {
  if (axes.empty() || axes.size() != axis_names.size()) {
    throw InvalidArgument("sweep needs matching non-empty axes");
  }
  size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.empty()) throw InvalidArgument("empty sweep axis");
    total *= axis.size();
  }
  ScanResult result;
  result.axis_names = axis_names;
  result.axes = axes;
  result.metadata = std::move(metadata);
  result.metadata["seed"] = std::to_string(master_seed);
  result.values.resize(total);
  std::vector<double> point(axes.size());
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rem = flat;
    for (size_t a = axes.size(); a-- > 0;) {
      point[a] = axes[a][rem % axes[a].size()];
      rem /= axes[a].size();
    }
    result.values[flat] = merit(point, child_seed(master_seed, flat));
  }
  return result;
}

std::pair<double, double> pulse_area_statistics(const ErrorChannel& drift,
                                                double tau_p, int trials) {
  if (drift.kind != ChannelKind::StochasticDrift) {
    throw ChannelNotApplicable("pulse_area_statistics needs a drift channel");
  }
  if (trials < 100) {
    throw InvalidArgument("need at least 100 trials");
  }
  if (drift.variance == 0.0) {
    return {0.0, 0.0};
  }
  // Resolve the path at least 10x finer than the correlation time so the
  // short-correlation regime is not floored by the sampling grid.
  const double dt = std::min(tau_p / 100.0, drift.correlation_time / 10.0);
  const int steps = static_cast<int>(std::ceil(tau_p / dt));
  double sum = 0.0, sum_sq = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(child_seed(drift.seed, trial));
    const std::vector<double> beta =
        ou_path(rng, drift.correlation_time, drift.variance, tau_p / steps,
                steps);
    double delta = 0.0;
    for (double b : beta) delta += b * (tau_p / steps);
    sum += delta;
    sum_sq += delta * delta;
  }
  const double mean = sum / trials;
  const double var = sum_sq / trials - mean * mean;
  return {mean, var};
}

}  // namespace stam
