#include "qdiscord/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdiscord/rng.hpp"

namespace qdiscord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Index kMaxGridAngles = 12;  // dim_y = 4 has 12 angles; beyond that the grid is useless

bool angles_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// total order on candidates so reductions are independent of visit order
bool candidate_less(double va, const std::vector<double>& aa, double vb,
                    const std::vector<double>& ab) {
    if (va != vb) return va < vb;
    return angles_less(aa, ab);
}

struct AngleMinimum {
    double value;
    std::vector<double> angles;
};

struct GridSpec {
    std::vector<Index> counts;
    std::vector<double> steps;
};

// dim_y = 2 keeps the documented theta in [0, pi] closed / phi in [0, pi)
// half-open layout; everything else spreads a grid_resolution^2 budget
// evenly over [0, pi)^k.
GridSpec uniform_grid(Index angle_count, const SearchConfig& cfg) {
    const double budget =
        static_cast<double>(cfg.grid_resolution) * static_cast<double>(cfg.grid_resolution);
    const Index per_angle = std::max<Index>(
        2, static_cast<Index>(std::floor(std::pow(budget, 1.0 / static_cast<double>(angle_count)))));
    GridSpec spec;
    spec.counts.assign(static_cast<std::size_t>(angle_count), per_angle);
    spec.steps.assign(static_cast<std::size_t>(angle_count), kPi / static_cast<double>(per_angle));
    return spec;
}

AngleMinimum grid_search(const AngleObjective& objective, const GridSpec& spec) {
    const std::size_t k = spec.counts.size();
    std::vector<Index> digit(k, 0);
    std::vector<double> angles(k, 0.0);
    AngleMinimum best{objective(angles), angles};
    // lexicographic odometer; strict comparison keeps the earliest minimizer
    while (true) {
        std::size_t pos = k;
        while (pos > 0 && ++digit[pos - 1] == spec.counts[pos - 1]) {
            digit[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        for (std::size_t i = 0; i < k; ++i)
            angles[i] = spec.steps[i] * static_cast<double>(digit[i]);
        const double v = objective(angles);
        if (v < best.value) best = {v, angles};
    }
    return best;
}

AngleMinimum nelder_mead(const AngleObjective& objective, std::vector<double> start,
                         const SearchConfig& cfg, bool& converged) {
    constexpr double alpha = 1.0;   // reflection
    constexpr double gamma = 2.0;   // expansion
    constexpr double beta = 0.5;    // contraction
    constexpr double sigma = 0.5;   // shrink
    constexpr double init_step = 0.2;

    const std::size_t n = start.size();
    std::vector<std::vector<double>> vertex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) vertex[i + 1][i] += init_step;
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i <= n; ++i) value[i] = objective(vertex[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return candidate_less(value[a], vertex[a], value[b], vertex[b]);
        });
        return idx;
    };

    converged = false;
    for (Index it = 0; it < cfg.refine_iterations; ++it) {
        const auto idx = order();
        const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                diameter = std::max(diameter, std::abs(vertex[i][d] - vertex[best][d]));
        if (diameter < cfg.tolerance) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += vertex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + t * (centroid[d] - vertex[worst][d]);
            return p;
        };

        const std::vector<double> reflected = blend(alpha);
        const double fr = objective(reflected);
        if (fr < value[best]) {
            const std::vector<double> expanded = blend(gamma);
            const double fe = objective(expanded);
            if (fe < fr) {
                vertex[worst] = expanded;
                value[worst] = fe;
            } else {
                vertex[worst] = reflected;
                value[worst] = fr;
            }
        } else if (fr < value[second]) {
            vertex[worst] = reflected;
            value[worst] = fr;
        } else {
            const std::vector<double> contracted = blend(fr < value[worst] ? beta : -beta);
            const double fc = objective(contracted);
            if (fc < std::min(fr, value[worst])) {
                vertex[worst] = contracted;
                value[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        vertex[i][d] = vertex[best][d] + sigma * (vertex[i][d] - vertex[best][d]);
                    value[i] = objective(vertex[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (candidate_less(value[i], vertex[i], value[best], vertex[best])) best = i;
    return {value[best], vertex[best]};
}

// shared search pipeline: optional grid seed, zero start, seeded restarts
AngleMinimizeResult search_angles(const AngleObjective& objective, Index angle_count,
                                  const SearchConfig& cfg, const GridSpec* grid) {
    long evaluations = 0;
    const AngleObjective counted = [&](const std::vector<double>& a) {
        ++evaluations;
        return objective(a);
    };

    struct Candidate {
        AngleMinimum best;
        bool converged;
    };
    std::vector<Candidate> candidates;
    auto refine_from = [&](std::vector<double> start) {
        bool converged = false;
        AngleMinimum refined = nelder_mead(counted, std::move(start), cfg, converged);
        candidates.push_back({std::move(refined), converged});
    };

    if (grid) refine_from(grid_search(counted, *grid).angles);
    refine_from(std::vector<double>(static_cast<std::size_t>(angle_count), 0.0));
    for (Index restart = 0; restart < cfg.seed_count; ++restart) {
        detail::Rng rng(
            detail::stream_seed(cfg.deterministic_seed, static_cast<std::uint64_t>(restart)));
        std::vector<double> start(static_cast<std::size_t>(angle_count));
        for (double& a : start) a = rng.uniform(0.0, kPi);
        refine_from(std::move(start));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidate_less(candidates[i].best.value, candidates[i].best.angles,
                           candidates[best].best.value, candidates[best].best.angles))
            best = i;
    Candidate& win = candidates[best];
    return {win.best.value, std::move(win.best.angles), win.converged, evaluations};
}

GridSpec basis_grid(Index dim_y, const SearchConfig& cfg) {
    if (dim_y == 2) {
        GridSpec spec;
        spec.counts = {cfg.grid_resolution, cfg.grid_resolution};
        spec.steps = {kPi / static_cast<double>(cfg.grid_resolution - 1),
                      kPi / static_cast<double>(cfg.grid_resolution)};
        return spec;
    }
    return uniform_grid(basis_angle_count(dim_y), cfg);
}

AngleObjective on_basis(const BasisObjective& objective, Index dim_y) {
    return [&objective, dim_y](const std::vector<double>& angles) {
        return objective(basis_from_angles(dim_y, angles));
    };
}

}  // namespace

void validate(const SearchConfig& cfg) {
    if (cfg.grid_resolution < 8)
        throw std::invalid_argument("search config: grid_resolution must be >= 8");
    if (!(cfg.tolerance > 0.0))
        throw std::invalid_argument("search config: tolerance must be positive");
    if (cfg.refine_iterations < 1)
        throw std::invalid_argument("search config: refine_iterations must be >= 1");
    if (cfg.seed_count < 1)
        throw std::invalid_argument("search config: seed_count must be >= 1");
}

GridMinimum grid_minimize(const BasisObjective& objective, Index dim_y, const SearchConfig& cfg) {
    validate(cfg);
    if (dim_y > 4)
        throw std::invalid_argument(
            "grid_minimize: angle count grows quadratically; dim_y > 4 is grid-infeasible, "
            "use refine-only search (minimize skips the grid there)");
    const GridSpec spec = basis_grid(dim_y, cfg);
    const AngleMinimum best = grid_search(on_basis(objective, dim_y), spec);
    return {best.value, basis_from_angles(dim_y, best.angles)};
}

RefinedMinimum refine_minimize(const BasisObjective& objective, const MeasurementBasis& start,
                               const SearchConfig& cfg) {
    validate(cfg);
    const Index dim_y = start.dim_y();
    const std::vector<double>& angles = start.parameters();
    if (static_cast<Index>(angles.size()) != basis_angle_count(dim_y))
        throw std::invalid_argument(
            "refine_minimize: start basis carries no angle parameterization");
    bool converged = false;
    const AngleMinimum best = nelder_mead(on_basis(objective, dim_y), angles, cfg, converged);
    return {best.value, basis_from_angles(dim_y, best.angles), converged};
}

MinimizeResult minimize(const BasisObjective& objective, Index dim_y, const SearchConfig& cfg) {
    validate(cfg);
    if (dim_y < 2) throw std::invalid_argument("minimize: dim_y must be >= 2");
    const GridSpec spec = basis_grid(dim_y, cfg);
    const GridSpec* grid = dim_y <= 4 ? &spec : nullptr;
    AngleMinimizeResult r =
        search_angles(on_basis(objective, dim_y), basis_angle_count(dim_y), cfg, grid);
    return {r.value, basis_from_angles(dim_y, r.angles), r.converged, r.evaluations};
}

AngleMinimizeResult minimize_angles(const AngleObjective& objective, Index angle_count,
                                    const SearchConfig& cfg) {
    validate(cfg);
    if (angle_count < 1) throw std::invalid_argument("minimize_angles: need at least one angle");
    const GridSpec spec = uniform_grid(angle_count, cfg);
    const GridSpec* grid = angle_count <= kMaxGridAngles ? &spec : nullptr;
    return search_angles(objective, angle_count, cfg, grid);
}

}  // namespace qdiscord
