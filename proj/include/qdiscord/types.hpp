// types.hpp — scalar/matrix aliases and the numerical tolerances used across the library
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qdiscord {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Which tensor factor of a bipartite space an operation refers to.
enum class Side { X, Y };

namespace tol {
// Hermiticity, entrywise max |M - M^dag|.
inline constexpr double hermitian = 1e-12;
// |Tr M - 1| for density matrices.
inline constexpr double trace = 1e-12;
// Smallest admissible eigenvalue of a density matrix.
inline constexpr double psd = -1e-10;
// Eigenvalues in [psd, 0) are clipped to 0 before entropy evaluation.
inline constexpr double eig_clip = 1e-10;
// Outcomes with probability at or below this carry a placeholder conditional.
inline constexpr double outcome = 1e-12;
// Floor used when a q=1 bound evaluates ln at a clipped-zero eigenvalue.
inline constexpr double log_floor = 1e-300;
}  // namespace tol

// Largest supported total dimension dimX*dimY (desk scale).
inline constexpr Index kMaxDimension = 64;

}  // namespace qdiscord
