#ifndef STAM_ROBUSTNESS_HPP
#define STAM_ROBUSTNESS_HPP

#include <cstdint>
#include <map>
#include <string>

#include "stam/diagnostics.hpp"
#include "stam/models.hpp"

namespace stam {

enum class ChannelKind {
  AmplitudeRelative,   // scales the coupling (off-diagonal) part by 1 + m
  DetuningAdditive,    // adds m * detuning operator (e.g. |e><e|)
  PhaseRelative,       // scales every duration by 1 + delta_e
  LocalPauli,          // adds m * sigma_axis^(site) to every pulse
  StochasticDrift      // seeded OU drift on the detuning operator
};

struct ErrorChannel {
  ChannelKind kind = ChannelKind::AmplitudeRelative;
  double magnitude = 0.0;
  int site = 0;               // LocalPauli
  int axis = 0;               // LocalPauli: 0/1/2 = x/y/z
  double correlation_time = 1.0;  // StochasticDrift
  double variance = 0.0;          // StochasticDrift: stationary variance
  std::uint64_t seed = 0;         // StochasticDrift

  static ErrorChannel amplitude(double m);
  static ErrorChannel detuning(double m);
  static ErrorChannel phase(double delta_e);
  static ErrorChannel local_pauli(int site, int axis, double m);
  static ErrorChannel drift(double correlation_time, double variance,
                            std::uint64_t seed);
};

PulseSequence apply_channel(const PulseSequence& seq, const ErrorChannel& ch);
PulseSequence apply_channels(const PulseSequence& seq,
                             const std::vector<ErrorChannel>& channels);

/// |<0|U_err|1>|^2 for the Lambda model at Theta_N = pi/2.
double transfer_efficiency(const LambdaModel& model, int N,
                           const std::vector<ErrorChannel>& channels);

/// Six-axis-state average fidelity of the Lindblad-propagated gate against
/// the ideal gate action on the qubit subspace.
double lambda_gate_merit(const LambdaModel& model, int N, double Theta_N,
                         const LindbladModel& noise);

LindbladModel lambda_noise(double gamma_e, double gamma_dep);

struct ScanResult {
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axes;
  std::vector<double> values;  // row-major over the axis product
  std::map<std::string, std::string> metadata;

  std::string to_csv() const;
};

using MeritFn = std::function<double(const std::vector<double>&, std::uint64_t)>;

/// Evaluates `merit` over the cartesian grid; each point gets a child seed
/// derived from (master seed, flat index) so results are order-independent.
ScanResult sweep(const std::vector<std::string>& axis_names,
                 const std::vector<std::vector<double>>& axes,
                 const MeritFn& merit, std::uint64_t master_seed,
                 std::map<std::string, std::string> metadata = {});

/// Ornstein-Uhlenbeck drift sample path integral delta = int beta dt over
/// [0, tau_p]; returns sample (mean, variance) of delta across trials.
std::pair<double, double> pulse_area_statistics(const ErrorChannel& drift,
                                                double tau_p, int trials);

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

}  // namespace stam

#endif
