#include "stam/dynamics.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace stam {

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}
}  // namespace

void LindbladModel::validate(int dim) const {
  for (const auto& [op, rate] : collapse_ops) {
    if (op.rows() != dim || op.cols() != dim) {
      throw DimensionMismatch("collapse operator dimension mismatch");
    }
    if (!std::isfinite(rate) || rate < 0.0) {
      throw InvalidArgument("collapse rates must be finite and >= 0");
    }
  }
}

StateVector propagate_unitary(const PulseSequence& seq, const StateVector& psi0) {
  if (!seq.pulses.empty() && seq.dim() != psi0.dim()) {
    throw DimensionMismatch("pulse sequence vs state dimension");
  }
  Vector psi = psi0.amplitudes;
  for (const Pulse& p : seq.pulses) {
    psi = expm(p.hamiltonian, Complex(0.0, -p.duration)).entries * psi;
  }
  StateVector out(std::move(psi));
  out.normalize();
  return out;
}

Operator propagator_of(const PulseSequence& seq) {
  if (seq.pulses.empty()) {
    throw InvalidArgument("propagator_of needs at least one pulse");
  }
  Matrix u = Matrix::Identity(seq.dim(), seq.dim());
  for (const Pulse& p : seq.pulses) {
    u = expm(p.hamiltonian, Complex(0.0, -p.duration)).entries * u;
  }
  return Operator(std::move(u), false);
}

Operator propagator_until(const PulseSequence& seq, double lambda) {
  const int d = seq.dim();
  Matrix u = Matrix::Identity(d, d);
  for (const Pulse& p : seq.pulses) {
    if (p.lambda <= lambda + kTolConstruct) {
      u = expm(p.hamiltonian, Complex(0.0, -p.duration)).entries * u;
    }
  }
  return Operator(std::move(u), false);
}

Matrix liouvillian(const Matrix& h, const LindbladModel& noise) {
  const int d = static_cast<int>(h.rows());
  const Matrix id = Matrix::Identity(d, d);
  const Complex i(0.0, 1.0);
  Matrix L = -i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& [op, rate] : noise.collapse_ops) {
    const Matrix opdag_op = op.adjoint() * op;
    L += rate * (kron(op.conjugate(), op) - 0.5 * kron(id, opdag_op) -
                 0.5 * kron(opdag_op.transpose(), id));
  }
  return L;
}

DensityMatrix propagate_lindblad_segments(
    const std::vector<std::pair<Matrix, double>>& segments,
    const DensityMatrix& rho0, const LindbladModel& noise) {
  const int d = rho0.dim();
  noise.validate(d);
  Vector rho_vec = Eigen::Map<const Vector>(rho0.entries.data(), d * d);
  for (const auto& [h, dt] : segments) {
    if (h.rows() != d || h.cols() != d) {
      throw DimensionMismatch("segment Hamiltonian dimension mismatch");
    }
    rho_vec = expm_general(liouvillian(h, noise) * dt) * rho_vec;
  }
  Matrix rho = Eigen::Map<const Matrix>(rho_vec.data(), d, d);
  rho = (rho + rho.adjoint()) / 2.0;  // scrub rounding
  if (std::abs(rho.trace().real() - 1.0) > kTolPhysics) {
    throw NonPhysicalState("trace drifted during Lindblad propagation");
  }
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix propagate_lindblad(const PulseSequence& seq,
                                 const DensityMatrix& rho0,
                                 const LindbladModel& noise) {
  std::vector<std::pair<Matrix, double>> segments;
  segments.reserve(seq.pulses.size());
  for (const Pulse& p : seq.pulses) {
    segments.emplace_back(p.hamiltonian.entries, p.duration);
  }
  return propagate_lindblad_segments(segments, rho0, noise);
}

namespace {

Vector ramp_once(const RampSpec& ramp, const HamiltonianFamily& h_of_s,
                 Vector psi, int steps) {
  const double dt = ramp.total_time / steps;
  for (int k = 0; k < steps; ++k) {
    const double s = (k + 0.5) * dt / ramp.total_time;
    const Matrix h = h_of_s(s);
    psi = expm(Operator((h + h.adjoint()) / 2.0, true), Complex(0.0, -dt))
              .entries *
          psi;
  }
  return psi;
}

}  // namespace

StateVector propagate_ramp(const RampSpec& ramp, const HamiltonianFamily& h_of_s,
                           const StateVector& psi0) {
  if (!(ramp.total_time > 0.0) || ramp.steps_per_unit_time < 1) {
    throw InvalidArgument("ramp needs positive total_time and steps");
  }
  int steps = std::max(
      16, static_cast<int>(std::ceil(ramp.total_time * ramp.steps_per_unit_time)));
  Vector psi = ramp_once(ramp, h_of_s, psi0.amplitudes, steps);
  if (ramp.convergence_check) {
    // Grid doubling: refine until two consecutive grids agree.
    bool converged = false;
    for (int round = 0; round < 8; ++round) {
      const Vector psi2 = ramp_once(ramp, h_of_s, psi0.amplitudes, 2 * steps);
      const double diff = (psi - psi2).norm();
      psi = psi2;
      steps *= 2;
      if (diff <= ramp.convergence_tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceNotReached("ramp grid doubling did not stabilize");
    }
  }
  StateVector out(std::move(psi));
  out.normalize();
  return out;
}

DensityMatrix propagate_ramp_lindblad(const RampSpec& ramp,
                                      const HamiltonianFamily& h_of_s,
                                      const DensityMatrix& rho0,
                                      const LindbladModel& noise) {
  const int steps = std::max(
      16, static_cast<int>(std::ceil(ramp.total_time * ramp.steps_per_unit_time)));
  const double dt = ramp.total_time / steps;
  std::vector<std::pair<Matrix, double>> segments;
  segments.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    segments.emplace_back(h_of_s((k + 0.5) * dt / ramp.total_time), dt);
  }
  return propagate_lindblad_segments(segments, rho0, noise);
}

}  // namespace stam
