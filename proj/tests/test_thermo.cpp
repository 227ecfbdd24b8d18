#include "qdiscord/thermo.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "qdiscord/discord.hpp"
#include "qdiscord/entropy.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/states.hpp"

using namespace qdiscord;

namespace {

SearchConfig quick_config() {
    SearchConfig cfg;
    cfg.grid_resolution = 32;
    cfg.refine_iterations = 400;
    cfg.tolerance = 1e-9;
    cfg.seed_count = 4;
    return cfg;
}

// best work a local reader can extract: max over bases of kT * I(Pi_Y[rho]),
// found by minimizing the measured entropy
double best_local_work(const DensityMatrix& rho, const ThermoContext& ctx,
                       const SearchConfig& cfg) {
    const BasisObjective measured_entropy = [&](const MeasurementBasis& b) {
        return tsallis_entropy(measure_channel(rho, b), ctx.q_index);
    };
    const double min_entropy = minimize(measured_entropy, rho.dim_y(), cfg).value;
    const double s_max = max_entropy(rho.dim(), ctx.q_index);
    return ctx.kT * (s_max - min_entropy);
}

}  // namespace

TEST_CASE("context validation") {
    CHECK_THROWS_AS(ThermoContext(EntropicIndex(1.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(ThermoContext(EntropicIndex(1.0), -2.0), std::domain_error);
    CHECK(ThermoContext(EntropicIndex(1.5)).kT == doctest::Approx(1.0));
}

TEST_CASE("extractable work") {
    const ThermoContext ctx(EntropicIndex(1.0), 2.0);
    // nothing from the maximally mixed state
    const DensityMatrix mixed(2, 2, 0.25 * identity(4));
    CHECK(extractable_work(mixed, ctx) == doctest::Approx(0.0).epsilon(1e-13));
    // a pure state yields the full kT S_max
    CHECK(extractable_work(max_entangled(2), ctx) ==
          doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-12));
    // scaling in kT
    const DensityMatrix rho = random_mixed(2, 2, 2, 501);
    const ThermoContext unit(EntropicIndex(1.0), 1.0);
    CHECK(extractable_work(rho, ctx) == doctest::Approx(2.0 * extractable_work(rho, unit)));
}

TEST_CASE("excess work is kT times the minimized deviation") {
    const SearchConfig cfg = quick_config();
    const DensityMatrix rho = random_mixed(2, 2, 3, 511);
    for (const double q : {1.0, 1.5}) {
        const ThermoContext ctx(EntropicIndex(q), 0.7);
        const ExcessWorkResult w = demon_excess_work(rho, ctx, cfg);
        const DiscordResult d = q_discord(rho, EntropicIndex(q), cfg);
        CHECK(w.value == doctest::Approx(0.7 * d.value).epsilon(1e-13));
        CHECK(w.discord.value == doctest::Approx(d.value).epsilon(1e-13));
        CHECK(w.value >= -1e-9);
    }
}

TEST_CASE("two-sided work identity") {
    const SearchConfig cfg = quick_config();
    for (std::uint64_t seed : {521, 522, 523}) {
        const DensityMatrix rho = random_mixed(2, 2, 4, seed);
        const ThermoContext ctx(EntropicIndex(1.0), 1.3);
        const ExcessWorkResult w = demon_excess_work(rho, ctx, cfg);
        const double gap = extractable_work(rho, ctx) - best_local_work(rho, ctx, cfg);
        CHECK(w.value == doctest::Approx(gap).epsilon(1e-8));
    }
}

TEST_CASE("work interpretation regime flag") {
    const SearchConfig cfg = quick_config();
    const DensityMatrix rho = random_mixed(2, 2, 2, 531);
    CHECK(demon_excess_work(rho, ThermoContext(EntropicIndex(1.0)), cfg).thermo_regime);
    CHECK(demon_excess_work(rho, ThermoContext(EntropicIndex(1.9)), cfg).thermo_regime);
    CHECK_FALSE(demon_excess_work(rho, ThermoContext(EntropicIndex(2.0)), cfg).thermo_regime);
    CHECK_FALSE(demon_excess_work(rho, ThermoContext(EntropicIndex(3.0)), cfg).thermo_regime);
}

TEST_CASE("dimensionless excess tracks the entropic measure") {
    const SearchConfig cfg = quick_config();
    // product states sit at the origin
    const DensityMatrix a = random_mixed(2, 2, 2, 541);
    const DensityMatrix product(2, 2,
                                tensor_product(partial_trace(a.matrix(), 2, 2, Side::Y),
                                               partial_trace(a.matrix(), 2, 2, Side::X)));
    CHECK(dimensionless_excess(product, cfg) == doctest::Approx(0.0).epsilon(1e-9));
    // the maximally entangled pair sits at ln 2
    CHECK(dimensionless_excess(max_entangled(2), cfg) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-7));
    // strictly increasing along the werner line (closed form as reference)
    double previous = -1.0;
    for (const double v : {0.2, 0.5, 0.8}) {
        const double numeric = dimensionless_excess(werner(v), cfg);
        const double closed =
            bell_diagonal_q_discord(BlochCorrelation(-v, -v, -v), EntropicIndex(1.0)).value;
        CHECK(numeric == doctest::Approx(closed).epsilon(1e-6));
        CHECK(numeric > previous);
        previous = numeric;
    }
}
