#include "stam/qla.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace stam {

namespace {

void check_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidArgument("operator must be a nonempty square matrix");
  }
  if (m.rows() > kMaxDim) {
    throw InvalidArgument("dimension exceeds the configured cap");
  }
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

StateVector::StateVector(Vector amps) : amplitudes(std::move(amps)) {
  if (amplitudes.size() < 2) {
    throw InvalidArgument("state dimension must be >= 2");
  }
}

void StateVector::normalize() {
  const double n = amplitudes.norm();
  if (n < kTolConstruct) {
    throw InvalidArgument("cannot normalize a zero vector");
  }
  amplitudes /= n;
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw IndexOutOfRange("basis index " + std::to_string(index));
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

Operator::Operator(Matrix m, bool hermitian)
    : entries(std::move(m)), hermitian_hint(hermitian) {
  check_square(entries);
  if (!entries.allFinite()) {
    throw NonFinite("operator entries must be finite");
  }
  if (hermitian_hint && hermiticity_defect(entries) > kTolConstruct) {
    throw NonHermitianInput("hermitian_hint violated");
  }
}

Operator Operator::identity(int dim) {
  return Operator(Matrix::Identity(dim, dim), true);
}

Operator Operator::zero(int dim) {
  return Operator(Matrix::Zero(dim, dim), true);
}

DensityMatrix::DensityMatrix(Matrix m) : entries(std::move(m)) {
  check_square(entries);
  if (hermiticity_defect(entries) > kTolConstruct) {
    throw NonPhysicalState("density matrix not Hermitian");
  }
  if (std::abs(entries.trace().real() - 1.0) > 1e-10 ||
      std::abs(entries.trace().imag()) > 1e-10) {
    throw NonPhysicalState("density matrix trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw NonPhysicalState("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint());
}

EigenSystem eig_hermitian(const Operator& op) {
  if (!op.hermitian_hint) {
    throw NonHermitianInput("eig_hermitian requires a Hermitian-hinted operator");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.entries);
  if (es.info() != Eigen::Success) {
    throw NonFinite("eigendecomposition failed");
  }
  return EigenSystem{es.eigenvalues(), es.eigenvectors()};
}

Operator expm(const Operator& op, Complex scale) {
  if (!op.entries.allFinite() || !std::isfinite(scale.real()) ||
      !std::isfinite(scale.imag())) {
    throw NonFinite("expm input not finite");
  }
  Matrix result;
  if (op.hermitian_hint) {
    EigenSystem es = eig_hermitian(op);
    Vector phases(op.dim());
    for (int k = 0; k < op.dim(); ++k) {
      phases(k) = std::exp(scale * es.eigenvalues(k));
    }
    result = es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
  } else {
    result = expm_general(scale * op.entries);
  }
  if (!result.allFinite()) {
    throw NonFinite("expm overflow");
  }
  return Operator(std::move(result), false);
}

Matrix expm_general(const Matrix& m) {
  check_square(m);
  return m.exp();
}

double op_fidelity(const Operator& u, const Operator& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("op_fidelity dims " + std::to_string(u.dim()) +
                            " vs " + std::to_string(v.dim()));
  }
  if (!is_unitary(u.entries, kTolPhysics) || !is_unitary(v.entries, kTolPhysics)) {
    throw InvalidArgument("op_fidelity requires unitary inputs");
  }
  return std::abs((u.entries.adjoint() * v.entries).trace()) / u.dim();
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("state_fidelity dims differ");
  }
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

bool is_unitary(const Matrix& u, double tol) {
  const int d = static_cast<int>(u.rows());
  return (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace stam
