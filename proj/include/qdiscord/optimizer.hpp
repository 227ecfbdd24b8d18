// optimizer.hpp — minimization over local measurement bases: exhaustive angle
// grid plus derivative-free simplex refinement with deterministic restarts
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qdiscord/measurement.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

struct SearchConfig {
    Index grid_resolution = 64;      // points per angle for the two-qubit grid
    Index refine_iterations = 500;
    double tolerance = 1e-9;         // simplex diameter convergence threshold
    Index seed_count = 8;            // random restarts
    std::uint64_t deterministic_seed = 12345;
};

// Throws std::invalid_argument unless grid_resolution >= 8, tolerance > 0,
// refine_iterations >= 1 and seed_count >= 1.
void validate(const SearchConfig& cfg);

using BasisObjective = std::function<double(const MeasurementBasis&)>;
using AngleObjective = std::function<double(const std::vector<double>&)>;

struct GridMinimum {
    double value;
    MeasurementBasis basis;
};

// Exhaustive minimum over an angle grid. For dim_y = 2 the grid is
// grid_resolution points per angle over theta in [0, pi] (closed) and
// phi in [0, pi) (half-open). For dim_y = 3, 4 the total budget stays at
// grid_resolution^2 points spread evenly over all d(d-1) angles in [0, pi).
// Ties break toward the lexicographically smallest angle tuple; the first
// grid point is the computational basis.
// Throws std::invalid_argument for dim_y > 4 (use refine-only search).
GridMinimum grid_minimize(const BasisObjective& objective, Index dim_y, const SearchConfig& cfg);

struct RefinedMinimum {
    double value;
    MeasurementBasis basis;
    bool converged;
};

// Nelder-Mead descent on the angle parameters recorded in `start`
// (throws std::invalid_argument if the basis carries none). Never returns a
// value above the start value; converged means the simplex diameter dropped
// below cfg.tolerance before the iteration cap.
RefinedMinimum refine_minimize(const BasisObjective& objective, const MeasurementBasis& start,
                               const SearchConfig& cfg);

struct MinimizeResult {
    double value;
    MeasurementBasis basis;
    bool converged;
    long evaluations;
};

// Grid seed (dim_y <= 4) refined locally, plus a zero-angle start and
// cfg.seed_count random restarts drawn from a counter-based generator, so the
// result is a pure function of the inputs. Candidates compare by
// (value, angle tuple) to keep the reduction order-independent.
MinimizeResult minimize(const BasisObjective& objective, Index dim_y, const SearchConfig& cfg);

struct AngleMinimizeResult {
    double value;
    std::vector<double> angles;
    bool converged;
    long evaluations;
};

// Same search strategy on a bare angle vector (used for product-basis
// searches): grid over [0, pi)^k within the grid_resolution^2 budget when
// k <= 12, zero start, random restarts, simplex refinement.
AngleMinimizeResult minimize_angles(const AngleObjective& objective, Index angle_count,
                                    const SearchConfig& cfg);

}  // namespace qdiscord
