#include "qdiscord/measurement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdiscord/linalg.hpp"

namespace qdiscord {

MeasurementBasis MeasurementBasis::from_columns(Matrix unitary, std::vector<double> parameters) {
    const Index d = unitary.rows();
    if (d < 1 || unitary.cols() != d)
        throw std::invalid_argument("measurement basis: expected a square nonempty matrix");
    // U†U = 1 is orthonormality of the kets; for square U it also gives
    // completeness UU† = sum_y |y><y| = 1. Rank-1 holds by construction.
    const double defect = (unitary.adjoint() * unitary - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(defect <= tol::outcome))
        throw std::invalid_argument("measurement basis: columns not orthonormal, defect " +
                                    std::to_string(defect));
    return MeasurementBasis(std::move(unitary), std::move(parameters));
}

MeasurementBasis qubit_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e_plus = std::polar(1.0, phi);
    const Complex e_minus = std::polar(1.0, -phi);
    Matrix u(2, 2);
    u(0, 0) = c;
    u(1, 0) = e_plus * s;
    u(0, 1) = -e_minus * s;
    u(1, 1) = c;
    return MeasurementBasis::from_columns(std::move(u), {theta, phi});
}

Index basis_angle_count(Index dim_y) {
    if (dim_y < 2) throw std::invalid_argument("basis_angle_count: dimension must be >= 2");
    if (dim_y == 2) return 2;
    return dim_y * (dim_y - 1);
}

MeasurementBasis general_basis(const std::vector<double>& unitary_params, Index dim_y) {
    if (dim_y < 2) throw std::invalid_argument("general_basis: dimension must be >= 2");
    const Index expected = dim_y * (dim_y - 1);
    if (static_cast<Index>(unitary_params.size()) != expected)
        throw std::invalid_argument("general_basis: expected " + std::to_string(expected) +
                                    " parameters, got " + std::to_string(unitary_params.size()));
    Matrix u = Matrix::Identity(dim_y, dim_y);
    std::size_t k = 0;
    for (Index i = 0; i < dim_y; ++i) {
        for (Index j = i + 1; j < dim_y; ++j) {
            const double theta = unitary_params[k++];
            const double phi = unitary_params[k++];
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const Complex e_plus = std::polar(1.0, phi);
            const Complex e_minus = std::polar(1.0, -phi);
            // two-level rotation in the (i, j) plane; applied on the right so
            // it mixes columns i and j of the accumulated unitary
            const Vector col_i = u.col(i);
            const Vector col_j = u.col(j);
            u.col(i) = c * col_i + e_minus * s * col_j;
            u.col(j) = -e_plus * s * col_i + c * col_j;
        }
    }
    return MeasurementBasis::from_columns(std::move(u), unitary_params);
}

MeasurementBasis basis_from_angles(Index dim_y, const std::vector<double>& angles) {
    if (dim_y == 2) {
        if (angles.size() != 2)
            throw std::invalid_argument("basis_from_angles: qubit basis takes 2 angles");
        return qubit_basis(angles[0], angles[1]);
    }
    return general_basis(angles, dim_y);
}

MeasurementBasis eigenbasis_of(const Matrix& hermitian) {
    const Spectrum s = spectral_decompose(hermitian);
    return MeasurementBasis::from_columns(s.eigenvectors);
}

std::vector<Matrix> conditional_blocks(const Matrix& rho, Index dim_x, Index dim_y,
                                       const MeasurementBasis& basis) {
    if (rho.rows() != dim_x * dim_y || basis.dim_y() != dim_y)
        throw std::invalid_argument("conditional_blocks: dimension mismatch");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(dim_y));
    for (Index y = 0; y < dim_y; ++y)
        blocks.push_back(partial_inner_y(rho, dim_x, dim_y, basis.ket(y)));
    return blocks;
}

Matrix apply_channel(const Matrix& rho, Index dim_x, Index dim_y, const MeasurementBasis& basis) {
    Matrix out = Matrix::Zero(dim_x * dim_y, dim_x * dim_y);
    for (Index y = 0; y < dim_y; ++y) {
        const Matrix block = partial_inner_y(rho, dim_x, dim_y, basis.ket(y));
        out += tensor_product(block, basis.projector(y));
    }
    return out;
}

DensityMatrix measure_channel(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (basis.dim_y() != rho.dim_y())
        throw std::invalid_argument("measure_channel: basis dimension " +
                                    std::to_string(basis.dim_y()) + " does not match subsystem Y (" +
                                    std::to_string(rho.dim_y()) + ")");
    return DensityMatrix(rho.dim_x(), rho.dim_y(),
                         apply_channel(rho.matrix(), rho.dim_x(), rho.dim_y(), basis));
}

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (basis.dim_y() != rho.dim_y())
        throw std::invalid_argument("conditional_ensemble: basis does not match subsystem Y");
    const Index dx = rho.dim_x();
    ConditionalEnsemble out;
    out.probabilities.resize(basis.dim_y());
    for (Index y = 0; y < basis.dim_y(); ++y) {
        Matrix block = partial_inner_y(rho.matrix(), dx, rho.dim_y(), basis.ket(y));
        const double p = block.trace().real();
        out.probabilities[y] = p;
        if (p <= tol::outcome) {
            out.conditionals.emplace_back(dx, 1, Matrix::Identity(dx, dx) / static_cast<double>(dx));
            out.placeholder.push_back(true);
        } else {
            out.conditionals.emplace_back(dx, 1, block / p);
            out.placeholder.push_back(false);
        }
    }
    return out;
}

Eigen::MatrixXd joint_probabilities(const Matrix& rho, const MeasurementBasis& basis_x,
                                    const MeasurementBasis& basis_y) {
    const Index dx = basis_x.dim_y();
    const Index dy = basis_y.dim_y();
    if (rho.rows() != dx * dy)
        throw std::invalid_argument("joint_probabilities: dimension mismatch");
    Eigen::MatrixXd d(dx, dy);
    for (Index x = 0; x < dx; ++x) {
        const Vector ux = basis_x.ket(x);
        for (Index y = 0; y < dy; ++y) {
            Vector prod(dx * dy);
            const Vector vy = basis_y.ket(y);
            for (Index i = 0; i < dx; ++i)
                prod.segment(i * dy, dy) = ux[i] * vy;
            d(x, y) = (prod.adjoint() * rho * prod)(0, 0).real();
        }
    }
    return d;
}

DensityMatrix joint_channel(const DensityMatrix& rho, const MeasurementBasis& basis_x,
                            const MeasurementBasis& basis_y) {
    const Index dx = rho.dim_x();
    const Index dy = rho.dim_y();
    if (basis_x.dim_y() != dx || basis_y.dim_y() != dy)
        throw std::invalid_argument("joint_channel: basis dimensions do not match the state");
    const Eigen::MatrixXd d = joint_probabilities(rho.matrix(), basis_x, basis_y);
    Matrix out = Matrix::Zero(dx * dy, dx * dy);
    for (Index x = 0; x < dx; ++x) {
        for (Index y = 0; y < dy; ++y) {
            Vector prod(dx * dy);
            const Vector ux = basis_x.ket(x);
            const Vector vy = basis_y.ket(y);
            for (Index i = 0; i < dx; ++i)
                prod.segment(i * dy, dy) = ux[i] * vy;
            out += d(x, y) * (prod * prod.adjoint());
        }
    }
    return DensityMatrix(dx, dy, std::move(out));
}

}  // namespace qdiscord
