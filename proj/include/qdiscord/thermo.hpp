// thermo.hpp — work-extraction reading of the correlation measures: a demon
// coupled to a bath converts information to work, and the local-measurement
// penalty is kT times the minimized Bayes deviation
#pragma once

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/entropy.hpp"
#include "qdiscord/optimizer.hpp"

namespace qdiscord {

struct ThermoContext {
    double kT;             // Boltzmann constant x bath temperature, energy units
    EntropicIndex q_index;

    // kT defaults to 1 for dimensionless results. Throws std::domain_error
    // for kT <= 0.
    explicit ThermoContext(EntropicIndex q, double kT_energy = 1.0);
};

// W(rho) = kT * I(rho), with I = S_max - S_q at the state's own dimension;
// zero for maximally mixed states.
double extractable_work(const DensityMatrix& rho, const ThermoContext& ctx);

struct ExcessWorkResult {
    double value;          // kT * D_q
    bool thermo_regime;    // the work reading is established for q in (0, 2)
    DiscordResult discord; // the underlying minimization
};

// Work advantage of global over local-measurement strategies: kT * D_q (same
// code path as q_discord). Outside q in (0, 2) the value is still computed
// but thermo_regime is false: the numbers lack the work interpretation.
ExcessWorkResult demon_excess_work(const DensityMatrix& rho, const ThermoContext& ctx,
                                   const SearchConfig& search);

// D_1(rho) = beta * (excess work): the dimensionless horizontal axis of the
// parametric family plots.
double dimensionless_excess(const DensityMatrix& rho, const SearchConfig& search);

}  // namespace qdiscord
