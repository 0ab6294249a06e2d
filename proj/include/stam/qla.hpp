#ifndef STAM_QLA_HPP
#define STAM_QLA_HPP

#include <utility>
#include <vector>

#include "stam/types.hpp"

namespace stam {

/// Normalized complex state vector of dimension >= 2.
struct StateVector {
  Vector amplitudes;

  StateVector() = default;
  explicit StateVector(Vector amps);

  int dim() const { return static_cast<int>(amplitudes.size()); }
  void normalize();
  static StateVector basis(int dim, int index);
};

/// Dense complex square matrix with an optional Hermiticity hint.
/// The hint is validated at construction (kTolConstruct).
struct Operator {
  Matrix entries;
  bool hermitian_hint = false;

  Operator() = default;
  Operator(Matrix m, bool hermitian);

  int dim() const { return static_cast<int>(entries.rows()); }
  static Operator identity(int dim);
  static Operator zero(int dim);
};

struct DensityMatrix {
  Matrix entries;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m);
  static DensityMatrix pure(const StateVector& psi);

  int dim() const { return static_cast<int>(entries.rows()); }
};

struct EigenSystem {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // columns, orthonormal
};

EigenSystem eig_hermitian(const Operator& op);

/// e^{scale * op}.  Hermitian-hinted inputs go through the
/// eigendecomposition path (exact for piecewise-constant pulses);
/// everything else through scaling-and-squaring Pade.
Operator expm(const Operator& op, Complex scale);

/// Matrix exponential of an arbitrary (e.g. Liouvillian) matrix.
Matrix expm_general(const Matrix& m);

/// F = |Tr(u^dag v)| / dim, for unitary u, v of equal dimension.
double op_fidelity(const Operator& u, const Operator& v);

/// |<a|b>|^2 for normalized states of equal dimension.
double state_fidelity(const StateVector& a, const StateVector& b);

bool is_unitary(const Matrix& u, double tol);

}  // namespace stam

#endif
