#ifndef STAM_MODELS_HPP
#define STAM_MODELS_HPP

#include "stam/protocol.hpp"

namespace stam {

/// Coherent-state preparation target: G = i alpha a^dag - i alpha^* a on a
/// truncated Fock space, energies E_n = n omega.
struct BosonicModel {
  int truncation = 40;
  double omega = 1.0;
  Complex alpha = 1.0;
};

struct BosonicBuild {
  GaugeSpec spec;
  bool truncation_warning = false;  // truncation < 8 (1 + |alpha|^2)
};

BosonicBuild build_bosonic(const BosonicModel& m);

/// Analytic coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!).
StateVector coherent_state(Complex alpha, int truncation);

/// Population in the top two Fock levels; flags an untrustworthy truncation.
double fock_leakage(const StateVector& psi);

/// Three-level Lambda system.  (k2, k3, t_p) are the primitive inputs; the
/// quantization E2 = -(2k2+1)pi/t_p, E3 = (2k3+1)pi/t_p fixes Omega, Delta
/// and the mixing angle xi.  Lab basis order: {|1>, |0>, |e>}.
struct LambdaModel {
  int k2 = 0;
  int k3 = 0;
  double t_p = 3.14159265358979323846;
  double phi = 0.0;

  double E2() const;
  double E3() const;
  double Delta() const { return E2() + E3(); }
  double Omega() const;
  double xi() const;  // from (E3 - E2) cos(2 xi) = E3 + E2
};

GaugeSpec build_lambda(const LambdaModel& m);

/// Inverse constructor: nearest (k2, k3) for the requested (Omega, Delta)
/// at fixed t_p; `mismatch` reports the residual in (Omega, Delta).
struct LambdaFit {
  LambdaModel model;
  double omega_mismatch = 0.0;
  double delta_mismatch = 0.0;
};
LambdaFit lambda_from_rates(double Omega, double Delta, double t_p,
                            double phi = 0.0);

/// The universal single-qubit gate realized in the {|1>, |0>} subspace.
Operator lambda_target_gate(int N, double Theta_N, double phi);

/// Stokes / pump envelopes at path point lambda.
double stokes_amplitude(const LambdaModel& m, double lambda);
double pump_amplitude(const LambdaModel& m, double lambda);

enum class Interpolation { Trig, Cot };

/// Two coupled qubits, H0 = -E/2 (sz1 + sz2), H1 = -E sx1 sx2.
/// Lab basis order: {|00>, |01>, |10>, |11>}.
struct CoupledQubitModel {
  double E = 1.0;
  double beta_mix = 3.14159265358979323846 / 4.0;
  double xi_mix = 0.0;
  Interpolation interpolation = Interpolation::Trig;
};

GaugeSpec build_coupled_qubits(const CoupledQubitModel& m);

Matrix coupled_h0(double E);
Matrix coupled_h1(double E);
StateVector psi_plus();   // (|00> - |11>)/sqrt(2)
StateVector psi_minus();  // (|01> - |10>)/sqrt(2)

/// sigma_{axis} on `site` (0-based) of an n-qubit register; axis 0/1/2 = x/y/z.
Matrix pauli_on_site(int n_qubits, int site, int axis);

}  // namespace stam

#endif
