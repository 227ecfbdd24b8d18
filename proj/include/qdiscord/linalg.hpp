// linalg.hpp — dense complex linear algebra for small bipartite systems:
// tensor products, partial traces, spectral decomposition, matrix functions.
//
// Bipartite index convention used everywhere: the product basis is |x>|y> with
// x major, i.e. the row index of a (dimX*dimY)-dimensional operator is
// x*dimY + y.
#pragma once

#include <functional>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "qdiscord/types.hpp"

namespace qdiscord {

// Kronecker product, a-index major. Accepts any dense expressions.
template <typename DerivedA, typename DerivedB>
Matrix tensor_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return Eigen::kroneckerProduct(a.template cast<Complex>(), b.template cast<Complex>());
}

// Entrywise max |M - M^dag|.
double hermiticity_violation(const Matrix& m);

// Throws std::invalid_argument with the violation magnitude if m is not
// Hermitian within tol::hermitian.
void require_hermitian(const Matrix& m, const char* what);

// Partial trace over the subsystem named by `traced_out`. The result acts on
// the remaining factor.
Matrix partial_trace(const Matrix& rho, Index dim_x, Index dim_y, Side traced_out);

// <y| rho |y> as an operator on X: B[i,j] = sum_{a,b} conj(y_a) y_b rho[(i,a),(j,b)].
// Building block for measurement channels; Tr B is the outcome probability.
Matrix partial_inner_y(const Matrix& rho, Index dim_x, Index dim_y, const Vector& ket_y);

// Swap the tensor factors: |x>|y> -> |y>|x>. Returns the permuted operator
// (dimensions swap roles), letting callers measure on X without duplicated code.
Matrix swap_subsystems(const Matrix& rho, Index dim_x, Index dim_y);

// Eigensystem of a Hermitian operator, eigenvalues ascending.
struct Spectrum {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // orthonormal columns, matching order
};

// Full eigendecomposition. Rejects non-Hermitian input (std::invalid_argument
// carrying the violation magnitude).
Spectrum spectral_decompose(const Matrix& m);

// Eigenvalues only, ascending. Closed form for 1x1/2x2, solver otherwise.
RealVector hermitian_eigenvalues(const Matrix& m);

// Clip eigenvalues in [-tol::eig_clip, 0) to 0. Values below -tol::eig_clip are
// an invariant violation and throw std::domain_error.
RealVector clip_spectrum(RealVector lambda);

// V f(lambda) V^dag. Throws std::domain_error if f is undefined (NaN/Inf) on
// the spectrum.
Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f);

// Small operator factories.
Matrix identity(Index d);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

}  // namespace qdiscord
