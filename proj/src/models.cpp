#include "stam/models.hpp"

#include <cmath>

namespace stam {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BosonicBuild build_bosonic(const BosonicModel& m) {
  if (m.truncation < 4) {
    throw InvalidTruncation("Fock truncation must be >= 4");
  }
  if (m.truncation > kMaxDim) {
    throw InvalidTruncation("Fock truncation exceeds the dimension cap");
  }
  const int d = m.truncation;
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  const Complex i(0.0, 1.0);
  Matrix g = i * m.alpha * a.adjoint() - i * std::conj(m.alpha) * a;

  BosonicBuild out;
  out.spec.dim = d;
  out.spec.generator = Operator(std::move(g), true);
  out.spec.initial_basis = Matrix::Identity(d, d);
  const double omega = m.omega;
  out.spec.energy = [omega](int level, double) { return level * omega; };
  if (std::abs(m.alpha) > kTolConstruct) {
    for (int n = 0; n + 1 < d; ++n) {
      out.spec.connected_pairs.push_back({n, n + 1});
    }
  }
  out.truncation_warning = d < 8.0 * (1.0 + std::norm(m.alpha));
  return out;
}

StateVector coherent_state(Complex alpha, int truncation) {
  Vector amps(truncation);
  // amplitudes alpha^n / sqrt(n!), built recursively, then normalized over
  // the truncated space (matches e^{-|a|^2/2} up to truncation error).
  Complex c = 1.0;
  for (int n = 0; n < truncation; ++n) {
    amps(n) = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  amps *= std::exp(-0.5 * std::norm(alpha));
  StateVector psi(std::move(amps));
  psi.normalize();
  return psi;
}

double fock_leakage(const StateVector& psi) {
  const int d = psi.dim();
  return std::norm(psi.amplitudes(d - 1)) + std::norm(psi.amplitudes(d - 2));
}

double LambdaModel::E2() const { return -(2 * k2 + 1) * kPi / t_p; }
double LambdaModel::E3() const { return (2 * k3 + 1) * kPi / t_p; }
double LambdaModel::Omega() const { return std::sqrt(-E2() * E3()); }

double LambdaModel::xi() const {
  const double c2 = (E3() + E2()) / (E3() - E2());
  if (std::abs(c2) > 1.0 + kTolConstruct) {
    throw InconsistentAngles("cos(2 xi) out of [-1, 1]");
  }
  return 0.5 * std::acos(std::clamp(c2, -1.0, 1.0));
}

GaugeSpec build_lambda(const LambdaModel& m) {
  if (m.k2 < 0 || m.k3 < 0 || !(m.t_p > 0.0)) {
    throw InvalidArgument("LambdaModel needs k2, k3 >= 0 and t_p > 0");
  }
  const double xi = m.xi();
  const Complex eip = std::exp(Complex(0.0, m.phi));
  const Complex i(0.0, 1.0);

  GaugeSpec spec;
  spec.dim = 3;
  Matrix basis = Matrix::Zero(3, 3);
  basis(0, 0) = 1.0;                                     // |1_0> = |1>
  basis(1, 1) = std::cos(xi) * eip;                      // |2_0>
  basis(2, 1) = -std::sin(xi);
  basis(1, 2) = std::sin(xi) * eip;                      // |3_0>
  basis(2, 2) = std::cos(xi);
  // G = g12 |1_0><2_0| + g13 |1_0><3_0| + h.c., g12 = i cos xi, g13 = i sin xi
  Matrix g = i * std::cos(xi) * basis.col(0) * basis.col(1).adjoint() +
             i * std::sin(xi) * basis.col(0) * basis.col(2).adjoint();
  g = (g + Matrix(g.adjoint())).eval();
  spec.generator = Operator(std::move(g), true);
  spec.initial_basis = std::move(basis);
  const double e2 = m.E2(), e3 = m.E3();
  spec.energy = [e2, e3](int level, double) {
    return level == 0 ? 0.0 : (level == 1 ? e2 : e3);
  };
  spec.connected_pairs = {{0, 1}, {0, 2}};
  spec.detuning_op = Matrix::Zero(3, 3);
  spec.detuning_op(2, 2) = 1.0;  // |e><e|
  return spec;
}

LambdaFit lambda_from_rates(double Omega, double Delta, double t_p, double phi) {
  if (!(Omega > 0.0) || !(t_p > 0.0)) {
    throw InvalidArgument("Omega and t_p must be positive");
  }
  // E2 E3 = -Omega^2, E2 + E3 = Delta.
  const double disc = std::sqrt(Delta * Delta + 4.0 * Omega * Omega);
  const double e3 = (Delta + disc) / 2.0;
  const double e2 = (Delta - disc) / 2.0;
  const auto nearest_k = [&](double e) {
    const double q = std::abs(e) * t_p / kPi;  // = 2k+1
    return std::max(0L, std::lround((q - 1.0) / 2.0));
  };
  LambdaFit fit;
  fit.model.k2 = static_cast<int>(nearest_k(e2));
  fit.model.k3 = static_cast<int>(nearest_k(e3));
  fit.model.t_p = t_p;
  fit.model.phi = phi;
  fit.omega_mismatch = fit.model.Omega() - Omega;
  fit.delta_mismatch = fit.model.Delta() - Delta;
  return fit;
}

Operator lambda_target_gate(int N, double Theta_N, double phi) {
  const double sgn = (N % 2 == 0) ? 1.0 : -1.0;
  const Complex eip = std::exp(Complex(0.0, phi));
  Matrix u(2, 2);
  u(0, 0) = std::cos(Theta_N);
  u(0, 1) = sgn * std::conj(eip) * std::sin(Theta_N);
  u(1, 0) = -eip * std::sin(Theta_N);
  u(1, 1) = sgn * std::cos(Theta_N);
  return Operator(std::move(u), false);
}

double stokes_amplitude(const LambdaModel& m, double lambda) {
  return 2.0 * m.Omega() * std::cos(lambda);
}

double pump_amplitude(const LambdaModel& m, double lambda) {
  return 2.0 * m.Omega() * std::sin(lambda);
}

Matrix coupled_h0(double E) {
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = -E;
  h(3, 3) = E;
  return h;
}

Matrix coupled_h1(double E) {
  Matrix h = Matrix::Zero(4, 4);
  h(0, 3) = h(3, 0) = -E;
  h(1, 2) = h(2, 1) = -E;
  return h;
}

StateVector psi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = -1.0 / std::sqrt(2.0);
  return StateVector(std::move(v));
}

StateVector psi_minus() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return StateVector(std::move(v));
}

GaugeSpec build_coupled_qubits(const CoupledQubitModel& m) {
  if (!(m.E > 0.0)) {
    throw InvalidArgument("energy scale E must be positive");
  }
  const Complex i(0.0, 1.0);
  const Complex eix = std::exp(i * m.xi_mix);

  GaugeSpec spec;
  spec.dim = 4;
  spec.n_qubits = 2;
  Matrix basis = Matrix::Zero(4, 4);
  basis(3, 0) = 1.0;                      // |1_0> = |11>
  basis(0, 1) = i;                        // |2_0> = i|00>
  basis(1, 2) = std::cos(m.beta_mix) * eix;
  basis(2, 2) = -std::sin(m.beta_mix);
  basis(1, 3) = std::sin(m.beta_mix) * eix;
  basis(2, 3) = std::cos(m.beta_mix);
  // g_{1,2} = g_{2,1} = -1
  Matrix g = -(basis.col(0) * basis.col(1).adjoint() +
               basis.col(1) * basis.col(0).adjoint());
  spec.generator = Operator(std::move(g), true);
  spec.initial_basis = std::move(basis);
  const double E = m.E;
  if (m.interpolation == Interpolation::Trig) {
    spec.energy = [E](int level, double lambda) {
      switch (level) {
        case 0: return E;
        case 1: return -E;
        case 2: return E * std::sin(2.0 * lambda);
        default: return -E * std::sin(2.0 * lambda);
      }
    };
  } else {
    // cot(2 lambda) H0 + H1 is diagonal in the same lambda-basis with
    // E1 = E / sin(2 lambda), E2 = -E1, E3 = E, E4 = -E.
    spec.energy = [E](int level, double lambda) {
      const double s = std::sin(2.0 * lambda);
      if (std::abs(s) < kTolConstruct) {
        throw SingularPoint("cot interpolation diverges at lambda = 0");
      }
      switch (level) {
        case 0: return E / s;
        case 1: return -E / s;
        case 2: return E;
        default: return -E;
      }
    };
  }
  spec.connected_pairs = {{0, 1}};
  return spec;
}

Matrix pauli_on_site(int n_qubits, int site, int axis) {
  if (n_qubits < 1 || site < 0 || site >= n_qubits || axis < 0 || axis > 2) {
    throw ChannelNotApplicable("invalid qubit site or axis");
  }
  Matrix sigma(2, 2);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case 0: sigma << 0, 1, 1, 0; break;
    case 1: sigma << 0, -i, i, 0; break;
    default: sigma << 1, 0, 0, -1; break;
  }
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    const Matrix& factor =
        q == site ? sigma : Matrix(Matrix::Identity(2, 2));
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < out.rows(); ++r) {
      for (int c = 0; c < out.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace stam
