#include "qdiscord/density_matrix.hpp"

#include <cmath>
#include <sstream>

namespace qdiscord {

DensityMatrix::DensityMatrix(Index dim_x, Index dim_y, Matrix m)
    : dim_x_(dim_x), dim_y_(dim_y), matrix_(std::move(m)) {
    if (dim_x < 1 || dim_y < 1) {
        throw std::invalid_argument("DensityMatrix: factor dimensions must be positive");
    }
    const Index d = dim_x * dim_y;
    if (d > kMaxDimension) {
        std::ostringstream os;
        os << "DensityMatrix: total dimension " << d << " exceeds the supported maximum "
           << kMaxDimension;
        throw std::invalid_argument(os.str());
    }
    if (matrix_.rows() != d || matrix_.cols() != d) {
        std::ostringstream os;
        os << "DensityMatrix: matrix is " << matrix_.rows() << "x" << matrix_.cols()
           << ", expected " << d << "x" << d;
        throw std::invalid_argument(os.str());
    }
    require_hermitian(matrix_, "DensityMatrix");
    const double trace_dev = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol::trace) {
        std::ostringstream os;
        os << "DensityMatrix: |Tr - 1| = " << trace_dev << " exceeds " << tol::trace;
        throw std::invalid_argument(os.str());
    }
    const RealVector eigs = hermitian_eigenvalues(matrix_);
    if (eigs(0) < tol::psd) {
        std::ostringstream os;
        os << "DensityMatrix: smallest eigenvalue " << eigs(0) << " below " << tol::psd;
        throw std::invalid_argument(os.str());
    }
}

DensityMatrix DensityMatrix::pure(Index dim_x, Index dim_y, const Vector& psi) {
    const double norm_dev = std::abs(psi.norm() - 1.0);
    if (norm_dev > 1e-10) {
        std::ostringstream os;
        os << "DensityMatrix::pure: state vector norm deviates from 1 by " << norm_dev;
        throw std::invalid_argument(os.str());
    }
    return DensityMatrix(dim_x, dim_y, psi * psi.adjoint());
}

const RealVector& DensityMatrix::spectrum() const {
    if (!spectrum_ready_) {
        spectrum_ = clip_spectrum(hermitian_eigenvalues(matrix_));
        spectrum_ready_ = true;
    }
    return spectrum_;
}

Matrix partial_trace(const DensityMatrix& rho, Side traced_out) {
    return partial_trace(rho.matrix(), rho.dim_x(), rho.dim_y(), traced_out);
}

DensityMatrix marginal_x(const DensityMatrix& rho) {
    return DensityMatrix(rho.dim_x(), 1, partial_trace(rho, Side::Y));
}

DensityMatrix marginal_y(const DensityMatrix& rho) {
    return DensityMatrix(rho.dim_y(), 1, partial_trace(rho, Side::X));
}

DensityMatrix swap_subsystems(const DensityMatrix& rho) {
    return DensityMatrix(rho.dim_y(), rho.dim_x(),
                         swap_subsystems(rho.matrix(), rho.dim_x(), rho.dim_y()));
}

}  // namespace qdiscord
