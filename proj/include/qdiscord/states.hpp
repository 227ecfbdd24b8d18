// states.hpp — constructors for the standard two-qubit families, maximally
// entangled states, seeded random states, and QDM state files
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

// Correlation vector of a maximum-marginals two-qubit state
// rho_c = (1/4)(I + sum_i c_i sigma_i (x) sigma_i). Construction verifies the
// resulting matrix is positive semidefinite.
class BlochCorrelation {
  public:
    BlochCorrelation(double c1, double c2, double c3);

    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double c3() const { return c3_; }
    double max_abs() const;

  private:
    double c1_, c2_, c3_;
};

// (1/4)(I + sum_i c_i sigma_i (x) sigma_i); both marginals are I/2.
DensityMatrix bell_diagonal(const BlochCorrelation& c);

// Werner family c = -v(1,1,1). Any v giving a PSD matrix is accepted
// (that is v in [-1/3, 1]); out-of-range v fails the PSD check.
DensityMatrix werner(double v);

// c = (u, v, (u-v)/2).
DensityMatrix uv_state(double u, double v);

// Separability flag from the family's known criterion: entangled iff
// v > (2-u)/3. Classification only; no entanglement measure is computed.
bool uv_entangled_flag(double u, double v);

// |Psi> = (1/sqrt(d)) sum_i |i>|i> as a projector; marginals are I_d/d.
DensityMatrix max_entangled(Index d);

// Normalized Gaussian-amplitude vector projector; the distribution is
// invariant under local rotations. Deterministic per seed.
DensityMatrix random_pure(Index dim_x, Index dim_y, std::uint64_t seed);

// Partial trace of a random pure state over an environment of dimension
// `rank`; rank 1 reduces to a random pure state.
DensityMatrix random_mixed(Index dim_x, Index dim_y, Index rank, std::uint64_t seed);

// QDM text format, bit-exact round trip:
//   line 1:  QDM 1 <dimX> <dimY>
//   then dimX*dimY rows of dimX*dimY whitespace-separated entries `a+bi`
//   (17 significant digits), row-major in the |x>(x)|y> ordering.
//   Lines starting with '#' are comments.
void save_state(const DensityMatrix& rho, const std::string& path);
DensityMatrix load_state(const std::string& path);

// Parsed state request: a family name plus its parameters, or a file path.
struct StateSpec {
    std::string kind;  // werner | uv | bell-diag | max-entangled | pure-random | mixed-random | file
    std::map<std::string, double> parameters;
    std::string path;  // kind == file only
};

// Builds the state, validating that the parameter set matches the kind.
DensityMatrix realize(const StateSpec& spec);

}  // namespace qdiscord
