#ifndef STAM_TYPES_HPP
#define STAM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stam {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance ladder, fixed globally: construction / propagation / physics.
inline constexpr double kTolConstruct = 1e-12;
inline constexpr double kTolProp = 1e-10;
inline constexpr double kTolPhysics = 1e-8;

// Dense dimensions are capped; desk-scale systems only.
inline constexpr int kMaxDim = 256;

#define STAM_DEFINE_ERROR(Name)                          \
  struct Name : std::runtime_error {                     \
    explicit Name(const std::string& msg)                \
        : std::runtime_error(std::string(#Name) + ": " + msg) {} \
  }

STAM_DEFINE_ERROR(NonHermitianInput);
STAM_DEFINE_ERROR(NonFinite);
STAM_DEFINE_ERROR(DimensionMismatch);
STAM_DEFINE_ERROR(IndexOutOfRange);
STAM_DEFINE_ERROR(MissingEnergy);
STAM_DEFINE_ERROR(NotBipartite);
STAM_DEFINE_ERROR(InconsistentPairs);
STAM_DEFINE_ERROR(InvalidArgument);
STAM_DEFINE_ERROR(IncommensurateEnergies);
STAM_DEFINE_ERROR(InvalidTruncation);
STAM_DEFINE_ERROR(InconsistentAngles);
STAM_DEFINE_ERROR(SingularPoint);
STAM_DEFINE_ERROR(NonPhysicalState);
STAM_DEFINE_ERROR(ConvergenceNotReached);
STAM_DEFINE_ERROR(OutOfPath);
STAM_DEFINE_ERROR(ChannelNotApplicable);
STAM_DEFINE_ERROR(ConfigError);
STAM_DEFINE_ERROR(NumericalCheckFailed);
STAM_DEFINE_ERROR(IOError);

#undef STAM_DEFINE_ERROR

}  // namespace stam

#endif
