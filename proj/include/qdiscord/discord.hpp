// discord.hpp — Bayes-rule deviation measures for bipartite states: the
// generic convex-function form, the Tsallis q-family with upper bounds, the
// entropic and geometric special cases, the both-sides variant, and closed
// forms for maximum-marginals and pure states
#pragma once

#include <functional>
#include <optional>

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/entropy.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

enum class Convexity { convex, strictly_convex };

// A differentiable convex scalar function applied to spectra. The q-family
// factory below fixes the kernel conventions; custom instances should define
// value/derivative on the closed interval [0, 1].
struct ConvexFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    Convexity strictness = Convexity::convex;
};

// f_q(x) = (x^q - x)/(q - 1), so Tr f_q(rho) = -S_q(rho) and the generic
// deviation below turns into the q-discord objective with the same code path.
// Conventions: f_q(x) = 0 for x <= 0; the derivative clamps its argument to
// the 1e-300 floor (relevant at q <= 1 on singular spectra; at q = 1 this is
// the x ln x branch with f'(x) = ln x + 1). For q < 1 the derivative diverges
// on a kernel, so upper bounds on singular states are informational only.
ConvexFunction q_convex_function(EntropicIndex q);

// Largest midpoint-convexity violation f((a+b)/2) - (f(a)+f(b))/2 over all
// pairs of a uniform grid on [lo, hi]; a convex f keeps this <= 0 up to
// rounding.
double convexity_defect(const ConvexFunction& f, double lo, double hi, Index samples);

struct DiscordResult {
    double value;
    double upper_bound;
    MeasurementBasis optimal_basis;  // argmin of the value (not the bound)
    long evaluations;                // objective calls across both searches
    bool converged;
};

// Tr f(rho) - Tr f(Pi_Y[rho]) at a fixed basis; nonnegative for convex f.
double delta_B_at_basis(const DensityMatrix& rho, const MeasurementBasis& basis,
                        const ConvexFunction& f);

// Klein bound at a fixed basis: Tr[(rho - Pi_Y[rho]) f'(rho)]; dominates
// delta_B_at_basis pointwise when f' exists on the spectrum.
double delta_B_bound_at_basis(const DensityMatrix& rho, const MeasurementBasis& basis,
                              const ConvexFunction& f);

// Minimum deviation from Bayes' rule over measurement bases on Y.
DiscordResult delta_B(const DensityMatrix& rho, const ConvexFunction& f, const SearchConfig& search);

// Minimized Klein bound (the upper_bound field of delta_B, standalone).
double delta_B_upper_bound(const DensityMatrix& rho, const ConvexFunction& f,
                           const SearchConfig& search);

// D_q = min over bases of S_q(Pi_Y[rho]) - S_q(rho), with the minimized
// Klein bound (q/(q-1)) Tr(rho^q - Pi_Y[rho] rho^{q-1}) attached; at q = 1
// the bound uses the x ln x limit and is informational.
DiscordResult q_discord(const DensityMatrix& rho, EntropicIndex q, const SearchConfig& search);

// S_q(Pi_Y[rho_Y]) + sum_y p_y^q S_q(rho_{X|y}) - S_q(rho): the conditional
// form of the measured-state entropy; equals delta_B_at_basis with f_q.
double q_conditional_form(const DensityMatrix& rho, EntropicIndex q,
                          const MeasurementBasis& basis);

// q = 1 case (von Neumann entropies), exact delegation to q_discord.
DiscordResult entropic_discord(const DensityMatrix& rho, const SearchConfig& search);

// min over bases of ||rho - Pi_Y[rho]||^2 (squared Hilbert-Schmidt norm),
// evaluated directly from the matrix difference; coincides with q = 2.
DiscordResult geometric_discord(const DensityMatrix& rho, const SearchConfig& search);

// Both-sides deviation: minimum over product bases (X and Y measured) of
// Tr f(rho) - Tr f(Pi[rho]). The reported optimal_basis is the Y-side basis;
// the X-side angles lead in the combined angle vector.
DiscordResult joint_disturbance(const DensityMatrix& rho, const ConvexFunction& f,
                                const SearchConfig& search);

struct BellDiagonalValues {
    double value;
    double upper_bound;
};

// Closed forms for maximum-marginals states rho_c, with c = max_i |c_i| and
// the eigenvalues taken numerically in ascending order:
//   value       = [sum_i lambda_i^q - ((1+c)^q + (1-c)^q)/2^{2q-1}] / (q-1)
//   upper bound = (q/(q-1)) [sum_i (lambda_i - 1/4) lambda_i^{q-1}
//                            - (c3/4)(l4^{q-1} + l3^{q-1} - l2^{q-1} - l1^{q-1})]
// both replaced by their q -> 1 limits on the von Neumann branch. The upper
// bound's c3 dependence assumes a preferred measurement axis; see the
// verification report for how it compares with the optimized bound away from
// the symmetric axis.
BellDiagonalValues bell_diagonal_q_discord(const BlochCorrelation& c, EntropicIndex q);

// D_q of a pure state: S_q of the Y marginal.
double pure_state_q_discord(const Vector& psi, Index dim_x, Index dim_y, EntropicIndex q);

// Fast-path detection for reporting: a two-qubit state of the
// maximum-marginals form (within 1e-10 entrywise), or a pure state
// (Tr rho^2 >= 1 - 1e-10, returning its state vector).
std::optional<BlochCorrelation> detect_bell_diagonal(const DensityMatrix& rho);
std::optional<Vector> detect_pure(const DensityMatrix& rho);

}  // namespace qdiscord
