#include "stam/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <sstream>

namespace stam {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

LevelPair norm_pair(int a, int b) {
  return a < b ? LevelPair{a, b} : LevelPair{b, a};
}

}  // namespace

Complex GaugeSpec::coupling(int n, int m) const {
  return (initial_basis.col(n).adjoint() * generator.entries *
          initial_basis.col(m))(0, 0);
}

void GaugeSpec::validate() const {
  if (dim < 2 || dim > kMaxDim) {
    throw InvalidArgument("GaugeSpec dim out of range");
  }
  if (generator.dim() != dim || initial_basis.rows() != dim ||
      initial_basis.cols() != dim) {
    throw DimensionMismatch("GaugeSpec matrices disagree with dim");
  }
  if ((generator.entries - generator.entries.adjoint()).cwiseAbs().maxCoeff() >
      kTolConstruct) {
    throw NonHermitianInput("generator not Hermitian");
  }
  if ((initial_basis.adjoint() * initial_basis - Matrix::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff() > kTolProp) {
    throw InvalidArgument("initial basis not orthonormal");
  }
  for (int n = 0; n < dim; ++n) {
    if (std::abs(coupling(n, n)) > kTolConstruct) {
      throw InvalidArgument("Born-Fock gauge violated: <n|G|n> != 0");
    }
  }
  std::vector<LevelPair> declared = connected_pairs;
  for (auto& p : declared) p = norm_pair(p.first, p.second);
  std::sort(declared.begin(), declared.end());
  for (int n = 0; n < dim; ++n) {
    for (int m = n + 1; m < dim; ++m) {
      const bool nonzero = std::abs(coupling(n, m)) > kTolConstruct;
      const bool listed =
          std::binary_search(declared.begin(), declared.end(), LevelPair{n, m});
      if (nonzero != listed) {
        throw InconsistentPairs("pair (" + std::to_string(n) + "," +
                                std::to_string(m) + ") declared=" +
                                (listed ? "yes" : "no") + " numeric=" +
                                (nonzero ? "yes" : "no"));
      }
    }
  }
}

std::vector<double> theta_from_lambda(const std::vector<double>& lambda_points) {
  std::vector<double> theta(lambda_points.size());
  for (size_t j = 0; j < lambda_points.size(); ++j) {
    double s = 0.0;
    for (size_t k = 0; k <= j; ++k) {
      const int sign = ((j + k) % 2 == 0) ? 1 : -1;
      s += sign * lambda_points[k];
    }
    theta[j] = 2.0 * s;
  }
  return theta;
}

Schedule make_schedule(int N, double Theta_N) {
  if (N < 1 || !(Theta_N > 0.0)) {
    throw InvalidArgument("make_schedule requires N >= 1 and Theta_N > 0");
  }
  Schedule s;
  s.N = N;
  s.Theta_N = Theta_N;
  s.equal_spacing = true;
  s.lambda_points.resize(N);
  for (int j = 1; j <= N; ++j) {
    s.lambda_points[j - 1] = Theta_N * (2 * j - 1) / (2.0 * N);
  }
  s.theta_points = theta_from_lambda(s.lambda_points);
  return s;
}

Schedule make_schedule_custom(const std::vector<double>& lambda_points) {
  if (lambda_points.empty()) {
    throw InvalidArgument("custom schedule needs at least one point");
  }
  for (size_t j = 0; j < lambda_points.size(); ++j) {
    if (lambda_points[j] <= 0.0 ||
        (j > 0 && lambda_points[j] <= lambda_points[j - 1])) {
      throw InvalidArgument("lambda points must be positive and strictly increasing");
    }
  }
  Schedule s;
  s.N = static_cast<int>(lambda_points.size());
  s.lambda_points = lambda_points;
  s.theta_points = theta_from_lambda(lambda_points);
  s.Theta_N = s.theta_points.back();
  s.equal_spacing = false;
  return s;
}

StateVector eigenstate_at(const GaugeSpec& spec, double lambda, int n) {
  if (n < 0 || n >= spec.dim) {
    throw IndexOutOfRange("level " + std::to_string(n));
  }
  const Operator u = expm(spec.generator, Complex(0.0, -lambda));
  StateVector psi(u.entries * spec.initial_basis.col(n));
  psi.normalize();
  return psi;
}

Operator hamiltonian_at(const GaugeSpec& spec, double lambda, int pulse_index) {
  (void)pulse_index;
  Eigen::VectorXd energies(spec.dim);
  for (int n = 0; n < spec.dim; ++n) {
    energies(n) = spec.energy(n, lambda);
  }
  const Operator u = expm(spec.generator, Complex(0.0, -lambda));
  const Matrix basis_l = u.entries * spec.initial_basis;
  Matrix h = basis_l * energies.asDiagonal() * basis_l.adjoint();
  h = (h + h.adjoint()) / 2.0;  // scrub rounding
  return Operator(std::move(h), true);
}

ClusterPartition validate_clusters(const GaugeSpec& spec) {
  spec.validate();
  std::vector<std::vector<int>> adj(spec.dim);
  for (const auto& p : spec.connected_pairs) {
    adj[p.first].push_back(p.second);
    adj[p.second].push_back(p.first);
  }
  ClusterPartition part;
  part.cluster_id.assign(spec.dim, -1);
  part.color.assign(spec.dim, -1);
  int next_cluster = 0;
  for (int start = 0; start < spec.dim; ++start) {
    if (part.cluster_id[start] >= 0) continue;
    const int cid = next_cluster++;
    part.cluster_id[start] = cid;
    if (adj[start].empty()) continue;  // singleton stays uncolored
    part.color[start] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adj[v]) {
        if (part.cluster_id[w] < 0) {
          part.cluster_id[w] = cid;
          part.color[w] = 1 - part.color[v];
          queue.push_back(w);
        } else if (part.color[w] == part.color[v]) {
          throw NotBipartite("odd cycle through levels " + std::to_string(v) +
                             " and " + std::to_string(w));
        }
      }
    }
  }
  return part;
}

namespace {

double solve_duration(const std::vector<double>& gaps,
                      const CompileOptions& opts) {
  std::vector<double> candidates;
  for (double gap : gaps) {
    for (int q = 1; q <= opts.odd_multiplier_cap; q += 2) {
      candidates.push_back(q * kPi / gap);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (double tau : candidates) {
    bool ok = true;
    for (double gap : gaps) {
      const double r = gap * tau / kPi;
      const long odd = 2 * std::lround((r - 1.0) / 2.0) + 1;
      if (odd < 1 || std::abs(gap * tau - odd * kPi) > opts.phase_tol) {
        ok = false;
        break;
      }
    }
    if (ok) return tau;
  }
  return -1.0;
}

}  // namespace

PulseSequence compile(const GaugeSpec& spec, const Schedule& sched,
                      const CompileOptions& opts) {
  validate_clusters(spec);  // throws NotBipartite / InconsistentPairs
  PulseSequence seq;
  seq.connected_pairs = spec.connected_pairs;
  seq.theta_checkpoints = sched.theta_points;
  seq.detuning_op = spec.detuning_op;
  seq.n_qubits = spec.n_qubits;
  for (int j = 0; j < sched.N; ++j) {
    const double lambda_j = sched.lambda_points[j];
    std::vector<double> energies(spec.dim);
    for (int n = 0; n < spec.dim; ++n) {
      energies[n] = spec.energy(n, lambda_j);
    }
    std::vector<double> gaps;
    for (const auto& p : spec.connected_pairs) {
      const double gap = std::abs(energies[p.first] - energies[p.second]);
      if (gap < kTolConstruct) {
        throw IncommensurateEnergies(
            "zero energy gap on a connected pair at pulse " + std::to_string(j));
      }
      gaps.push_back(gap);
    }
    double tau = gaps.empty() ? kPi : solve_duration(gaps, opts);
    if (tau <= 0.0) {
      throw IncommensurateEnergies("no common duration at pulse " +
                                   std::to_string(j));
    }
    Pulse pulse;
    pulse.lambda = lambda_j;
    pulse.hamiltonian = hamiltonian_at(spec, lambda_j, j);
    pulse.duration = tau;
    seq.total_time += tau;
    seq.pulses.push_back(std::move(pulse));
    seq.level_energies.push_back(std::move(energies));
  }
  return seq;
}

GaugeSpec explicit_g_spec(const std::vector<Complex>& targets, int dim,
                          double energy_scale) {
  if (dim < 2 || static_cast<int>(targets.size()) != dim - 1) {
    throw InvalidArgument("explicit_g_spec needs dim-1 target couplings");
  }
  bool any = false;
  for (const Complex& g : targets) {
    if (std::abs(g) > kTolConstruct) any = true;
  }
  if (!any) {
    throw InvalidArgument("at least one g_{n,1} must be nonzero");
  }
  if (!(energy_scale > 0.0)) {
    throw InvalidArgument("energy scale must be positive");
  }
  GaugeSpec spec;
  spec.dim = dim;
  spec.initial_basis = Matrix::Identity(dim, dim);
  Matrix g = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    g(n, 0) = targets[n - 1];
    g(0, n) = std::conj(targets[n - 1]);
    if (std::abs(targets[n - 1]) > kTolConstruct) {
      spec.connected_pairs.push_back({0, n});
    }
  }
  spec.generator = Operator(std::move(g), true);
  spec.energy = [energy_scale](int level, double) {
    return level == 0 ? 0.0 : energy_scale;
  };
  return spec;
}

std::vector<double> accumulated_phases(const PulseSequence& seq, double lambda) {
  const int d = seq.dim();
  std::vector<double> phases(seq.level_energies.empty()
                                 ? d
                                 : seq.level_energies.front().size(),
                             0.0);
  for (size_t j = 0; j < seq.pulses.size(); ++j) {
    if (seq.pulses[j].lambda <= lambda + kTolConstruct) {
      for (size_t n = 0; n < phases.size(); ++n) {
        phases[n] += seq.level_energies[j][n] * seq.pulses[j].duration;
      }
    }
  }
  return phases;
}

Operator adiabatic_target(const GaugeSpec& spec, const PulseSequence& seq,
                          double lambda) {
  const std::vector<double> phases = accumulated_phases(seq, lambda);
  Vector diag(spec.dim);
  for (int n = 0; n < spec.dim; ++n) {
    diag(n) = std::exp(Complex(0.0, -phases[n]));
  }
  const Operator u = expm(spec.generator, Complex(0.0, -lambda));
  Matrix target = u.entries * spec.initial_basis * diag.asDiagonal() *
                  spec.initial_basis.adjoint();
  return Operator(std::move(target), false);
}

// --- serialization -------------------------------------------------------

std::string serialize_gauge_spec(const GaugeSpec& spec, const Schedule& sched) {
  std::ostringstream out;
  out << "stam-gauge-spec v1\n";
  out << "dim " << spec.dim << "\n";
  out << "n_qubits " << spec.n_qubits << "\n";
  for (int r = 0; r < spec.dim; ++r) {
    for (int c = 0; c < spec.dim; ++c) {
      const Complex g = spec.generator.entries(r, c);
      if (std::abs(g) > 0.0) {
        out << "generator " << r << " " << c << " " << fmt(g.real()) << " "
            << fmt(g.imag()) << "\n";
      }
    }
  }
  for (int r = 0; r < spec.dim; ++r) {
    for (int c = 0; c < spec.dim; ++c) {
      const Complex b = spec.initial_basis(r, c);
      if (std::abs(b) > 0.0) {
        out << "basis " << r << " " << c << " " << fmt(b.real()) << " "
            << fmt(b.imag()) << "\n";
      }
    }
  }
  if (spec.detuning_op.size() > 0) {
    for (int r = 0; r < spec.dim; ++r) {
      for (int c = 0; c < spec.dim; ++c) {
        const Complex v = spec.detuning_op(r, c);
        if (std::abs(v) > 0.0) {
          out << "detuning " << r << " " << c << " " << fmt(v.real()) << " "
              << fmt(v.imag()) << "\n";
        }
      }
    }
  }
  for (const auto& p : spec.connected_pairs) {
    out << "pair " << p.first << " " << p.second << "\n";
  }
  out << "schedule " << sched.N << " " << fmt(sched.Theta_N) << " "
      << (sched.equal_spacing ? "equal" : "custom") << "\n";
  for (double l : sched.lambda_points) {
    out << "lambda " << fmt(l) << "\n";
  }
  for (int j = 0; j < sched.N; ++j) {
    for (int n = 0; n < spec.dim; ++n) {
      out << "energy " << j << " " << n << " "
          << fmt(spec.energy(n, sched.lambda_points[j])) << "\n";
    }
  }
  return out.str();
}

std::pair<GaugeSpec, Schedule> parse_gauge_spec(const std::string& text) {
  std::istringstream in(text);
  std::string header, version;
  in >> header >> version;
  if (header != "stam-gauge-spec" || version != "v1") {
    throw ConfigError("bad gauge-spec header");
  }
  GaugeSpec spec;
  Schedule sched;
  std::map<std::pair<int, int>, double> energy_table;  // (pulse, level) -> E
  std::string key;
  int dim = 0;
  Matrix generator, basis, detuning;
  while (in >> key) {
    if (key == "dim") {
      in >> dim;
      if (dim < 2 || dim > kMaxDim) throw ConfigError("bad dim");
      generator = Matrix::Zero(dim, dim);
      basis = Matrix::Zero(dim, dim);
    } else if (key == "n_qubits") {
      in >> spec.n_qubits;
    } else if (key == "generator" || key == "basis" || key == "detuning") {
      int r, c;
      double re, im;
      in >> r >> c >> re >> im;
      if (dim == 0 || r < 0 || r >= dim || c < 0 || c >= dim) {
        throw ConfigError("matrix entry out of range");
      }
      if (key == "detuning" && detuning.size() == 0) {
        detuning = Matrix::Zero(dim, dim);
      }
      Matrix& target =
          key == "generator" ? generator : (key == "basis" ? basis : detuning);
      target(r, c) = Complex(re, im);
    } else if (key == "pair") {
      int a, b;
      in >> a >> b;
      spec.connected_pairs.push_back({a, b});
    } else if (key == "schedule") {
      std::string mode;
      in >> sched.N >> sched.Theta_N >> mode;
      sched.equal_spacing = (mode == "equal");
    } else if (key == "lambda") {
      double l;
      in >> l;
      sched.lambda_points.push_back(l);
    } else if (key == "energy") {
      int j, n;
      double e;
      in >> j >> n >> e;
      energy_table[{j, n}] = e;
    } else {
      throw ConfigError("unknown gauge-spec key: " + key);
    }
    if (!in) throw ConfigError("malformed gauge-spec line near key: " + key);
  }
  if (dim == 0) throw ConfigError("gauge-spec missing dim");
  if (static_cast<int>(sched.lambda_points.size()) != sched.N) {
    throw ConfigError("schedule lambda count mismatch");
  }
  sched.theta_points = theta_from_lambda(sched.lambda_points);
  spec.dim = dim;
  spec.generator = Operator(std::move(generator), true);
  spec.initial_basis = std::move(basis);
  spec.detuning_op = std::move(detuning);
  // Table-backed energy function keyed by lambda point lookup.
  const std::vector<double> lambdas = sched.lambda_points;
  spec.energy = [lambdas, energy_table](int level, double lambda) {
    for (size_t j = 0; j < lambdas.size(); ++j) {
      if (std::abs(lambdas[j] - lambda) <= 1e-9) {
        auto it = energy_table.find({static_cast<int>(j), level});
        if (it == energy_table.end()) {
          throw MissingEnergy("no energy for level " + std::to_string(level));
        }
        return it->second;
      }
    }
    throw MissingEnergy("no energy tabulated at lambda=" + fmt(lambda));
  };
  return {std::move(spec), std::move(sched)};
}

std::string serialize_pulse_sequence(const PulseSequence& seq) {
  std::ostringstream out;
  out << "stam-pulse-sequence v1\n";
  out << "dim " << seq.dim() << "\n";
  out << "n_qubits " << seq.n_qubits << "\n";
  for (size_t j = 0; j < seq.pulses.size(); ++j) {
    const Pulse& p = seq.pulses[j];
    out << "pulse " << j << " " << fmt(p.lambda) << " " << fmt(p.duration)
        << "\n";
    for (int r = 0; r < p.hamiltonian.dim(); ++r) {
      for (int c = 0; c < p.hamiltonian.dim(); ++c) {
        const Complex h = p.hamiltonian.entries(r, c);
        if (std::abs(h) > 0.0) {
          out << "h " << j << " " << r << " " << c << " " << fmt(h.real())
              << " " << fmt(h.imag()) << "\n";
        }
      }
    }
    for (size_t n = 0; n < seq.level_energies[j].size(); ++n) {
      out << "energy " << j << " " << n << " " << fmt(seq.level_energies[j][n])
          << "\n";
    }
  }
  for (size_t j = 0; j < seq.theta_checkpoints.size(); ++j) {
    out << "checkpoint " << j << " " << fmt(seq.theta_checkpoints[j]) << "\n";
  }
  for (const auto& p : seq.connected_pairs) {
    out << "pair " << p.first << " " << p.second << "\n";
  }
  if (seq.detuning_op.size() > 0) {
    for (int r = 0; r < seq.dim(); ++r) {
      for (int c = 0; c < seq.dim(); ++c) {
        const Complex v = seq.detuning_op(r, c);
        if (std::abs(v) > 0.0) {
          out << "detuning " << r << " " << c << " " << fmt(v.real()) << " "
              << fmt(v.imag()) << "\n";
        }
      }
    }
  }
  return out.str();
}

PulseSequence parse_pulse_sequence(const std::string& text) {
  std::istringstream in(text);
  std::string header, version;
  in >> header >> version;
  if (header != "stam-pulse-sequence" || version != "v1") {
    throw ConfigError("bad pulse-sequence header");
  }
  PulseSequence seq;
  int dim = 0;
  std::vector<Matrix> hs;
  std::string key;
  while (in >> key) {
    if (key == "dim") {
      in >> dim;
      if (dim < 2 || dim > kMaxDim) throw ConfigError("bad dim");
    } else if (key == "n_qubits") {
      in >> seq.n_qubits;
    } else if (key == "pulse") {
      size_t j;
      Pulse p;
      in >> j >> p.lambda >> p.duration;
      if (j != seq.pulses.size()) throw ConfigError("pulse index out of order");
      if (!(p.duration > 0.0)) throw ConfigError("non-positive duration");
      seq.pulses.push_back(std::move(p));
      hs.emplace_back(Matrix::Zero(dim, dim));
      seq.level_energies.emplace_back(dim, 0.0);
    } else if (key == "h") {
      size_t j;
      int r, c;
      double re, im;
      in >> j >> r >> c >> re >> im;
      if (j >= hs.size() || r < 0 || r >= dim || c < 0 || c >= dim) {
        throw ConfigError("h entry out of range");
      }
      hs[j](r, c) = Complex(re, im);
    } else if (key == "energy") {
      size_t j;
      int n;
      double e;
      in >> j >> n >> e;
      if (j >= seq.level_energies.size() || n < 0 || n >= dim) {
        throw ConfigError("energy entry out of range");
      }
      seq.level_energies[j][n] = e;
    } else if (key == "checkpoint") {
      size_t j;
      double theta;
      in >> j >> theta;
      if (j != seq.theta_checkpoints.size()) {
        throw ConfigError("checkpoint index out of order");
      }
      seq.theta_checkpoints.push_back(theta);
    } else if (key == "pair") {
      int a, b;
      in >> a >> b;
      seq.connected_pairs.push_back({a, b});
    } else if (key == "detuning") {
      int r, c;
      double re, im;
      in >> r >> c >> re >> im;
      if (seq.detuning_op.size() == 0) {
        seq.detuning_op = Matrix::Zero(dim, dim);
      }
      seq.detuning_op(r, c) = Complex(re, im);
    } else {
      throw ConfigError("unknown pulse-sequence key: " + key);
    }
    if (!in) throw ConfigError("malformed pulse-sequence line near key: " + key);
  }
  for (size_t j = 0; j < seq.pulses.size(); ++j) {
    seq.pulses[j].hamiltonian = Operator(std::move(hs[j]), true);
    seq.total_time += seq.pulses[j].duration;
  }
  return seq;
}

}  // namespace stam
