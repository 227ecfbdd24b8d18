#include "qdiscord/thermo.hpp"

#include <stdexcept>
#include <utility>

namespace qdiscord {

ThermoContext::ThermoContext(EntropicIndex q, double kT_energy) : kT(kT_energy), q_index(q) {
    if (!(kT_energy > 0.0)) throw std::domain_error("thermo context: kT must be positive");
}

double extractable_work(const DensityMatrix& rho, const ThermoContext& ctx) {
    return ctx.kT * information(rho, ctx.q_index);
}

ExcessWorkResult demon_excess_work(const DensityMatrix& rho, const ThermoContext& ctx,
                                   const SearchConfig& search) {
    DiscordResult d = q_discord(rho, ctx.q_index, search);
    const bool regime = ctx.q_index.q < 2.0;  // q > 0 already guaranteed
    return {ctx.kT * d.value, regime, std::move(d)};
}

double dimensionless_excess(const DensityMatrix& rho, const SearchConfig& search) {
    return q_discord(rho, EntropicIndex(1.0), search).value;
}

}  // namespace qdiscord
