#include "stam/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace stam {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<PhaseProfile> phase_profiles(const PulseSequence& seq,
                                         double lambda) {
  if (lambda < 0.0) {
    throw OutOfPath("negative path length");
  }
  std::vector<PhaseProfile> out;
  for (const auto& pair : seq.connected_pairs) {
    PhaseProfile prof;
    prof.breakpoints.push_back(0.0);
    double dphi = 0.0;
    prof.values.push_back(1.0);  // before the first pulse
    for (size_t j = 0; j < seq.pulses.size(); ++j) {
      const double lj = seq.pulses[j].lambda;
      if (lj > lambda) break;
      dphi += (seq.level_energies[j][pair.first] -
               seq.level_energies[j][pair.second]) *
              seq.pulses[j].duration;
      prof.breakpoints.push_back(lj);
      prof.values.push_back(std::exp(Complex(0.0, dphi)));
    }
    prof.breakpoints.push_back(lambda);
    out.push_back(std::move(prof));
  }
  return out;
}

PhaseProfile ideal_square_wave(const Schedule& sched, double delta_e) {
  PhaseProfile prof;
  prof.breakpoints.push_back(0.0);
  for (int j = 0; j < sched.N; ++j) {
    prof.values.push_back(std::exp(Complex(0.0, j * kPi * (1.0 + delta_e))));
    prof.breakpoints.push_back(sched.lambda_points[j]);
  }
  prof.values.push_back(
      std::exp(Complex(0.0, sched.N * kPi * (1.0 + delta_e))));
  prof.breakpoints.push_back(sched.Theta_N);
  return prof;
}

double eps_ave(const PhaseProfile& profile, double lambda,
               int grid_per_interval) {
  if (profile.breakpoints.size() != profile.values.size() + 1) {
    throw InvalidArgument("malformed phase profile");
  }
  double sup = 0.0;
  Complex running = 0.0;
  for (size_t k = 0; k < profile.values.size(); ++k) {
    const double a = profile.breakpoints[k];
    const double b = std::min(profile.breakpoints[k + 1], lambda);
    if (b <= a) break;
    const Complex f = profile.values[k];
    // The integrand is constant on the interval, so the running integral
    // moves on a straight line; the grid samples |running| along it.
    for (int g = 1; g <= grid_per_interval; ++g) {
      const double t = a + (b - a) * g / grid_per_interval;
      sup = std::max(sup, std::abs(running + f * (t - a)));
    }
    running += f * (b - a);
    if (profile.breakpoints[k + 1] >= lambda) break;
  }
  return sup;
}

double eps_ave(const std::vector<PhaseProfile>& profiles, double lambda,
               int grid_per_interval) {
  double sup = 0.0;
  for (const auto& p : profiles) {
    sup = std::max(sup, eps_ave(p, lambda, grid_per_interval));
  }
  return sup;
}

Operator u_deviation(const PulseSequence& seq, const GaugeSpec& spec,
                     double lambda) {
  if (!seq.theta_checkpoints.empty() &&
      lambda > seq.theta_checkpoints.back() + kTolConstruct) {
    throw OutOfPath("lambda beyond Theta_N");
  }
  const Operator u = propagator_until(seq, lambda);
  const Operator u_adia = adiabatic_target(spec, seq, lambda);
  return Operator(u_adia.entries.adjoint() * u.entries, false);
}

std::string BoundReport::csv_header() {
  return "lambda,g_max,g_prime_max,eps_ave,L_dim,bound,infidelity";
}

std::string BoundReport::csv_row() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%.12g,%.12g,%.12g,%.12g,%d,%.12g,%.12g", lambda, g_max,
                g_prime_max, eps_ave, L_dim, bound_value, actual_infidelity);
  return buf;
}

BoundReport bound_report(const GaugeSpec& spec, const PulseSequence& seq,
                         double lambda) {
  BoundReport report;
  report.lambda = lambda;
  report.L_dim = spec.dim;
  for (const auto& pair : spec.connected_pairs) {
    report.g_max =
        std::max(report.g_max, std::abs(spec.coupling(pair.first, pair.second)));
  }
  report.g_prime_max = 0.0;  // constant G
  report.eps_ave = eps_ave(phase_profiles(seq, lambda), lambda);
  report.bound_value =
      2.0 * lambda * report.L_dim *
      std::sqrt(report.eps_ave *
                (report.g_max * report.g_max * report.L_dim +
                 report.g_prime_max) *
                report.g_max);
  report.vacuous = report.bound_value > 1.0;
  const Operator u = propagator_until(seq, lambda);
  const Operator u_adia = adiabatic_target(spec, seq, lambda);
  report.actual_infidelity = 1.0 - op_fidelity(u_adia, u);
  return report;
}

}  // namespace stam
