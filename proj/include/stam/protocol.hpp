#ifndef STAM_PROTOCOL_HPP
#define STAM_PROTOCOL_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stam/qla.hpp"

namespace stam {

using LevelPair = std::pair<int, int>;  // unordered, stored with first < second

/// A STAM "program": constant Hermitian generator G, the initial
/// eigenbasis |n_0> (columns), per-level energies as a function of the
/// path parameter, and the declared coupling graph.
struct GaugeSpec {
  int dim = 0;
  Operator generator;                                  // G, zero diagonal in initial basis
  Matrix initial_basis;                                // columns |n_0>, orthonormal
  std::function<double(int, double)> energy;           // (level, lambda) -> E_n(lambda)
  std::vector<LevelPair> connected_pairs;

  // Model metadata consumed by error channels (empty/zero when absent).
  Matrix detuning_op;  // e.g. |e><e| for the Lambda system
  int n_qubits = 0;    // >0 when the lab basis is a qubit register

  /// g_{n,m} = <n_0|G|m_0>.
  Complex coupling(int n, int m) const;
  /// Checks Hermiticity, orthonormality, zero gauge diagonal and the
  /// declared-vs-numeric pair table.  Throws on violation.
  void validate() const;
};

struct Schedule {
  int N = 0;
  double Theta_N = 0.0;
  std::vector<double> lambda_points;  // lambda_1..lambda_N, strictly increasing
  std::vector<double> theta_points;   // Theta_1..Theta_N
  bool equal_spacing = true;
};

enum class Spacing { Equal, Custom };

Schedule make_schedule(int N, double Theta_N);
Schedule make_schedule_custom(const std::vector<double>& lambda_points);

/// Theta_j = 2 sum_{k<=j} (-1)^{j+k} lambda_k.
std::vector<double> theta_from_lambda(const std::vector<double>& lambda_points);

struct Pulse {
  double lambda = 0.0;
  Operator hamiltonian;
  double duration = 0.0;
};

struct PulseSequence {
  std::vector<Pulse> pulses;
  double total_time = 0.0;

  // Compile metadata used by diagnostics and error channels.
  std::vector<std::vector<double>> level_energies;  // [pulse][level]
  std::vector<double> theta_checkpoints;
  std::vector<LevelPair> connected_pairs;
  Matrix detuning_op;
  int n_qubits = 0;

  int dim() const {
    return pulses.empty() ? 0 : pulses.front().hamiltonian.dim();
  }
};

struct ClusterPartition {
  std::vector<int> cluster_id;  // per level
  std::vector<int> color;       // 0/1 within a cluster, -1 for singletons
};

StateVector eigenstate_at(const GaugeSpec& spec, double lambda, int n);

/// H(lambda) = sum_n E_n(lambda_j) |n_lambda><n_lambda| for pulse j.
Operator hamiltonian_at(const GaugeSpec& spec, double lambda, int pulse_index);

ClusterPartition validate_clusters(const GaugeSpec& spec);

struct CompileOptions {
  int odd_multiplier_cap = 9;  // scan multipliers 1,3,...,cap
  double phase_tol = 1e-9;
};

PulseSequence compile(const GaugeSpec& spec, const Schedule& sched,
                      const CompileOptions& opts = {});

/// G = sum_{n>=2} g_{n,1}|n_0><1_0| + h.c. in the computational basis,
/// with E_1 = 0 and E_n = energy_scale for n != 1.
GaugeSpec explicit_g_spec(const std::vector<Complex>& targets, int dim,
                          double energy_scale = 1.0);

/// U_adia(lambda) = sum_n e^{-i phi_n} |n_lambda><n_0| with phi_n the
/// dynamic phase accumulated by the pulses with lambda_j <= lambda.
Operator adiabatic_target(const GaugeSpec& spec, const PulseSequence& seq,
                          double lambda);

std::vector<double> accumulated_phases(const PulseSequence& seq, double lambda);

// Declarative text serialization (lossless round-trip together with the
// schedule the energies were materialized at).
std::string serialize_gauge_spec(const GaugeSpec& spec, const Schedule& sched);
std::pair<GaugeSpec, Schedule> parse_gauge_spec(const std::string& text);
std::string serialize_pulse_sequence(const PulseSequence& seq);
PulseSequence parse_pulse_sequence(const std::string& text);

}  // namespace stam

#endif
