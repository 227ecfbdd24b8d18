#include "qdiscord/linalg.hpp"

#include <cmath>
#include <sstream>

namespace qdiscord {

double hermiticity_violation(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": matrix is " << m.rows() << "x" << m.cols() << ", not square";
        throw std::invalid_argument(os.str());
    }
    const double viol = hermiticity_violation(m);
    if (viol > tol::hermitian) {
        std::ostringstream os;
        os << what << ": not Hermitian, max |M - M^dag| = " << viol;
        throw std::invalid_argument(os.str());
    }
}

Matrix partial_trace(const Matrix& rho, Index dim_x, Index dim_y, Side traced_out) {
    if (rho.rows() != dim_x * dim_y || rho.cols() != dim_x * dim_y) {
        throw std::invalid_argument("partial_trace: dimensions do not match the operator size");
    }
    if (traced_out == Side::Y) {
        Matrix out = Matrix::Zero(dim_x, dim_x);
        for (Index i = 0; i < dim_x; ++i)
            for (Index j = 0; j < dim_x; ++j)
                for (Index a = 0; a < dim_y; ++a)
                    out(i, j) += rho(i * dim_y + a, j * dim_y + a);
        return out;
    }
    Matrix out = Matrix::Zero(dim_y, dim_y);
    for (Index a = 0; a < dim_y; ++a)
        for (Index b = 0; b < dim_y; ++b)
            for (Index i = 0; i < dim_x; ++i)
                out(a, b) += rho(i * dim_y + a, i * dim_y + b);
    return out;
}

Matrix partial_inner_y(const Matrix& rho, Index dim_x, Index dim_y, const Vector& ket_y) {
    if (ket_y.size() != dim_y) {
        throw std::invalid_argument("partial_inner_y: ket dimension mismatch");
    }
    Matrix out = Matrix::Zero(dim_x, dim_x);
    for (Index i = 0; i < dim_x; ++i) {
        for (Index j = 0; j < dim_x; ++j) {
            Complex acc(0.0, 0.0);
            for (Index a = 0; a < dim_y; ++a) {
                const Complex ca = std::conj(ket_y(a));
                for (Index b = 0; b < dim_y; ++b) {
                    acc += ca * ket_y(b) * rho(i * dim_y + a, j * dim_y + b);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

Matrix swap_subsystems(const Matrix& rho, Index dim_x, Index dim_y) {
    const Index d = dim_x * dim_y;
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("swap_subsystems: dimensions do not match the operator size");
    }
    Matrix out(d, d);
    for (Index i = 0; i < dim_x; ++i)
        for (Index a = 0; a < dim_y; ++a)
            for (Index j = 0; j < dim_x; ++j)
                for (Index b = 0; b < dim_y; ++b)
                    out(a * dim_x + i, b * dim_x + j) = rho(i * dim_y + a, j * dim_y + b);
    return out;
}

Spectrum spectral_decompose(const Matrix& m) {
    require_hermitian(m, "spectral_decompose");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_decompose: eigensolver failed to converge");
    }
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    const Index n = m.rows();
    if (n == 1) {
        RealVector v(1);
        v(0) = m(0, 0).real();
        return v;
    }
    if (n == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double b2 = std::norm(m(0, 1));
        const double half_tr = 0.5 * (a + d);
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b2);
        RealVector v(2);
        v(0) = half_tr - disc;
        v(1) = half_tr + disc;
        return v;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

RealVector clip_spectrum(RealVector lambda) {
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < 0.0) {
            if (lambda(i) < -tol::eig_clip) {
                std::ostringstream os;
                os << "clip_spectrum: eigenvalue " << lambda(i) << " below the PSD tolerance "
                   << -tol::eig_clip;
                throw std::domain_error(os.str());
            }
            lambda(i) = 0.0;
        }
    }
    return lambda;
}

Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f) {
    const Spectrum spec = spectral_decompose(m);
    RealVector mapped(spec.eigenvalues.size());
    for (Index i = 0; i < mapped.size(); ++i) {
        const double v = f(spec.eigenvalues(i));
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "matrix_function: f undefined at eigenvalue " << spec.eigenvalues(i);
            throw std::domain_error(os.str());
        }
        mapped(i) = v;
    }
    Matrix out = spec.eigenvectors * mapped.asDiagonal() * spec.eigenvectors.adjoint();
    return 0.5 * (out + Matrix(out.adjoint()));
}

Matrix identity(Index d) { return Matrix::Identity(d, d); }

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace qdiscord
