// density_matrix.hpp — validated bipartite density operator
#pragma once

#include <string>

#include "qdiscord/linalg.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

// A Hermitian, unit-trace, positive-semidefinite operator on X (x) Y with
// recorded factor dimensions. Invariants are checked at construction:
//   max |M - M^dag| <= 1e-12, |Tr M - 1| <= 1e-12, min eigenvalue >= -1e-10,
//   dimX*dimY <= 64.
// Instances are immutable values; safe to share across threads.
class DensityMatrix {
  public:
    DensityMatrix(Index dim_x, Index dim_y, Matrix m);

    // Projector |psi><psi| of a normalized state vector (norm within 1e-10).
    static DensityMatrix pure(Index dim_x, Index dim_y, const Vector& psi);

    Index dim_x() const { return dim_x_; }
    Index dim_y() const { return dim_y_; }
    Index dim() const { return dim_x_ * dim_y_; }
    const Matrix& matrix() const { return matrix_; }

    // Clipped eigenvalues (ascending), cached after the first request.
    const RealVector& spectrum() const;

  private:
    Index dim_x_;
    Index dim_y_;
    Matrix matrix_;
    mutable RealVector spectrum_;  // lazily filled
    mutable bool spectrum_ready_ = false;
};

// Reduced state of the factor not named by `traced_out`.
Matrix partial_trace(const DensityMatrix& rho, Side traced_out);

// Marginals as validated density matrices on a trivial bipartition (dim, 1).
DensityMatrix marginal_x(const DensityMatrix& rho);
DensityMatrix marginal_y(const DensityMatrix& rho);

// Exchange the roles of X and Y.
DensityMatrix swap_subsystems(const DensityMatrix& rho);

}  // namespace qdiscord
