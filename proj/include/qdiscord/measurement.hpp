// measurement.hpp — local projective measurement channels on subsystem Y,
// conditional ensembles, and basis parameterization
#pragma once

#include <vector>

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

// A complete set of rank-1 orthonormal projectors |y><y| on subsystem Y,
// stored as the columns of a unitary. Construction validates completeness,
// orthogonality and rank-1 within 1e-12. Measurement channels act on the
// second tensor factor; use swap_subsystems to measure the first instead.
class MeasurementBasis {
  public:
    // Columns of `unitary` are the basis kets. `parameters` records the angles
    // that generated the basis, when applicable.
    static MeasurementBasis from_columns(Matrix unitary, std::vector<double> parameters = {});

    Index dim_y() const { return columns_.rows(); }
    const Matrix& columns() const { return columns_; }
    Vector ket(Index y) const { return columns_.col(y); }
    Matrix projector(Index y) const { return columns_.col(y) * columns_.col(y).adjoint(); }
    const std::vector<double>& parameters() const { return parameters_; }

  private:
    MeasurementBasis(Matrix cols, std::vector<double> params)
        : columns_(std::move(cols)), parameters_(std::move(params)) {}

    Matrix columns_;
    std::vector<double> parameters_;
};

// Basis with |y0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its
// orthogonal complement.
MeasurementBasis qubit_basis(double theta, double phi);

// Basis from a product of Givens-style two-level rotations with phases,
// planes (i,j) in lexicographic order, one (theta, phi) pair per plane.
// Expects dim_y*(dim_y - 1) parameters; all zeros give the computational
// basis. The construction is surjective onto the set of measurement bases.
MeasurementBasis general_basis(const std::vector<double>& unitary_params, Index dim_y);

// Number of angles parameterizing a basis on a dim_y-dimensional factor.
Index basis_angle_count(Index dim_y);

// Dispatch: qubit_basis for dim_y = 2, general_basis otherwise.
MeasurementBasis basis_from_angles(Index dim_y, const std::vector<double>& angles);

// Eigenbasis of a Hermitian operator on Y (ascending eigenvalue order).
MeasurementBasis eigenbasis_of(const Matrix& hermitian);

// Unnormalized conditional blocks B_y = <y|rho|y> acting on X. Tr B_y = p_y
// and B_y/p_y = rho_{X|y}; the measured state is sum_y B_y (x) |y><y|.
std::vector<Matrix> conditional_blocks(const Matrix& rho, Index dim_x, Index dim_y,
                                       const MeasurementBasis& basis);

// Pi_Y[rho] = sum_y (1 (x) Pi_y) rho (1 (x) Pi_y) as a raw matrix.
Matrix apply_channel(const Matrix& rho, Index dim_x, Index dim_y, const MeasurementBasis& basis);

// Unread-measurement channel, validated output. Idempotent.
DensityMatrix measure_channel(const DensityMatrix& rho, const MeasurementBasis& basis);

// Outcome probabilities with conditional states. Outcomes with
// p_y <= 1e-12 carry a flagged maximally mixed placeholder conditional.
struct ConditionalEnsemble {
    RealVector probabilities;
    std::vector<DensityMatrix> conditionals;
    std::vector<bool> placeholder;
};

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis);

// Joint outcome probabilities d_{xy} = <u_x v_y| rho |u_x v_y>.
Eigen::MatrixXd joint_probabilities(const Matrix& rho, const MeasurementBasis& basis_x,
                                    const MeasurementBasis& basis_y);

// Pi[rho] = sum_{x,y} Pi_{xy} rho Pi_{xy}, diagonal in the product basis.
DensityMatrix joint_channel(const DensityMatrix& rho, const MeasurementBasis& basis_x,
                            const MeasurementBasis& basis_y);

}  // namespace qdiscord
