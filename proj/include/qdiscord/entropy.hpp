// entropy.hpp — Tsallis q-entropy, its q->1 and q=2 special cases, and the
// information functional I(rho) = S_max - S_q(rho)
#pragma once

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

// The entropic index q > 0. |q - 1| < 1e-6 routes to the von Neumann formula,
// since the ratio form (1 - Tr rho^q)/(q - 1) loses precision near q = 1.
struct EntropicIndex {
    double q;

    explicit EntropicIndex(double q_);
    bool von_neumann_branch() const { return std::abs(q - 1.0) < 1e-6; }
};

// S_q of a probability/eigenvalue vector. Entries are clipped per the spectrum
// policy; 0^q := 0 and 0 ln 0 := 0.
double tsallis_entropy(const RealVector& lambda, EntropicIndex q);

double tsallis_entropy(const DensityMatrix& rho, EntropicIndex q);

// S_2 = 1 - Tr rho^2 evaluated directly from the matrix.
double linear_entropy(const DensityMatrix& rho);

// S_q(I_d/d): (1 - d^{1-q})/(q - 1), ln d on the q=1 branch.
double max_entropy(Index dimension, EntropicIndex q);

// I(rho) = S_max - S_q(rho). S_max is fixed by an explicit dimension context:
// the joint dimension for joint states, the subsystem dimension for reduced
// ones. Zero for maximally mixed states, nonnegative otherwise.
struct InformationFunctional {
    EntropicIndex index;
    double s_max;

    static InformationFunctional for_dimension(Index dimension, EntropicIndex q);
    double operator()(const DensityMatrix& rho) const;
};

// Convenience: the dimension context is the state's own total dimension.
double information(const DensityMatrix& rho, EntropicIndex q);

}  // namespace qdiscord
