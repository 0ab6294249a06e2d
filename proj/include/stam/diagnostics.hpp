#ifndef STAM_DIAGNOSTICS_HPP
#define STAM_DIAGNOSTICS_HPP

#include "stam/dynamics.hpp"
#include "stam/protocol.hpp"

namespace stam {

/// Piecewise-constant phase factor e^{i(phi_n - phi_m)(lambda)} for one
/// connected pair: value[k] holds on [breakpoints[k], breakpoints[k+1]).
struct PhaseProfile {
  std::vector<double> breakpoints;  // size values.size() + 1, starts at 0
  std::vector<Complex> values;
};

/// Profiles for every connected pair of a compiled sequence, over [0, lambda].
std::vector<PhaseProfile> phase_profiles(const PulseSequence& seq,
                                         double lambda);

/// Ideal STAM square wave e^{i j pi (1 + delta_e)} on [lambda_j, lambda_{j+1}).
PhaseProfile ideal_square_wave(const Schedule& sched, double delta_e);

/// sup over lambda' of |int_0^{lambda'} e^{i(phi_n-phi_m)} d lambda''|,
/// evaluated on a dense grid (grid_per_interval points per interval).
double eps_ave(const PhaseProfile& profile, double lambda,
               int grid_per_interval = 2048);
double eps_ave(const std::vector<PhaseProfile>& profiles, double lambda,
               int grid_per_interval = 2048);

/// U_D(lambda) = U_adia(lambda)^dag U(lambda).
Operator u_deviation(const PulseSequence& seq, const GaugeSpec& spec,
                     double lambda);

struct BoundReport {
  double lambda = 0.0;
  double g_max = 0.0;
  double g_prime_max = 0.0;
  double eps_ave = 0.0;
  int L_dim = 0;
  double bound_value = 0.0;
  double actual_infidelity = 0.0;
  bool vacuous = false;  // bound_value > 1

  std::string csv_row() const;
  static std::string csv_header();
};

BoundReport bound_report(const GaugeSpec& spec, const PulseSequence& seq,
                         double lambda);

}  // namespace stam

#endif
