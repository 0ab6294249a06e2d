#ifndef STAM_DYNAMICS_HPP
#define STAM_DYNAMICS_HPP

#include <functional>

#include "stam/protocol.hpp"

namespace stam {

struct LindbladModel {
  // (collapse operator, rate >= 0); rates in the same frequency units as H.
  std::vector<std::pair<Matrix, double>> collapse_ops;

  void validate(int dim) const;
};

/// Continuous ramp: H(s) with s = t/T sliced into midpoint-rule steps.
struct RampSpec {
  double total_time = 0.0;
  int steps_per_unit_time = 100;
  bool convergence_check = true;  // grid-doubling refinement
  double convergence_tol = 1e-6;
};

StateVector propagate_unitary(const PulseSequence& seq, const StateVector& psi0);

Operator propagator_of(const PulseSequence& seq);

/// Ordered product of the pulse propagators with lambda_j <= lambda.
Operator propagator_until(const PulseSequence& seq, double lambda);

DensityMatrix propagate_lindblad(const PulseSequence& seq,
                                 const DensityMatrix& rho0,
                                 const LindbladModel& noise);

/// Piecewise-constant segments (H, dt) evolved under the vectorized
/// Liouvillian, exponentiated exactly per segment.
DensityMatrix propagate_lindblad_segments(
    const std::vector<std::pair<Matrix, double>>& segments,
    const DensityMatrix& rho0, const LindbladModel& noise);

Matrix liouvillian(const Matrix& h, const LindbladModel& noise);

using HamiltonianFamily = std::function<Matrix(double)>;  // s in [0, 1]

StateVector propagate_ramp(const RampSpec& ramp, const HamiltonianFamily& h_of_s,
                           const StateVector& psi0);

DensityMatrix propagate_ramp_lindblad(const RampSpec& ramp,
                                      const HamiltonianFamily& h_of_s,
                                      const DensityMatrix& rho0,
                                      const LindbladModel& noise);

}  // namespace stam

#endif
