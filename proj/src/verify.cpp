#include "qdiscord/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/entropy.hpp"
#include "qdiscord/format.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/rng.hpp"
#include "qdiscord/states.hpp"

namespace qdiscord {

namespace {

struct CorpusEntry {
    DensityMatrix rho;
    bool pure;
};

// shape cycle per block of 10: six 2x2 (two of them pure), two 2x3, two 3x3
CorpusEntry make_state(Index i, std::uint64_t seed) {
    const std::uint64_t s = detail::stream_seed(seed, static_cast<std::uint64_t>(i));
    switch (i % 10) {
        case 0: return {random_pure(2, 2, s), true};
        case 1: return {random_mixed(2, 2, 1, s), true};
        case 2: return {random_mixed(2, 2, 2, s), false};
        case 3: return {random_mixed(2, 2, 3, s), false};
        case 4: return {random_mixed(2, 2, 4, s), false};
        case 5: return {random_mixed(2, 2, 4, s), false};
        case 6: return {random_pure(2, 3, s), true};
        case 7: return {random_mixed(2, 3, 6, s), false};
        case 8: return {random_pure(3, 3, s), true};
        default: return {random_mixed(3, 3, 9, s), false};
    }
}

MeasurementBasis random_basis(Index dim_y, std::uint64_t seed) {
    detail::Rng rng(seed);
    std::vector<double> angles(static_cast<std::size_t>(basis_angle_count(dim_y)));
    for (double& a : angles) a = rng.uniform(0.0, std::numbers::pi);
    return basis_from_angles(dim_y, angles);
}

// kernel eigenvalues come back from the solver as O(1e-16) noise; snapping them
// to zero keeps fractional powers from amplifying that noise to sqrt(eps)
double snap_kernel(double lambda) { return lambda < 1e-12 ? 0.0 : lambda; }

// sum of lambda^q over the nonnegative part of the spectrum
double power_trace(const Matrix& m, double q) {
    const RealVector eigs = hermitian_eigenvalues(m);
    double t = 0.0;
    for (Index i = 0; i < eigs.size(); ++i) t += std::pow(snap_kernel(eigs[i]), q);
    return t;
}

Matrix matrix_power_psd(const Matrix& m, double q) {
    const Spectrum s = spectral_decompose(m);
    Vector powered(s.eigenvalues.size());
    for (Index i = 0; i < powered.size(); ++i) powered[i] = std::pow(snap_kernel(s.eigenvalues[i]), q);
    return s.eigenvectors * powered.asDiagonal() * s.eigenvectors.adjoint();
}

double entropy_of(const Matrix& m, EntropicIndex q) {
    return tsallis_entropy(RealVector(hermitian_eigenvalues(m).cwiseMax(0.0)), q);
}

double min_delta(const DensityMatrix& rho, const ConvexFunction& f, const SearchConfig& cfg) {
    const BasisObjective objective = [&](const MeasurementBasis& b) {
        return delta_B_at_basis(rho, b, f);
    };
    return minimize(objective, rho.dim_y(), cfg).value;
}

std::string states_detail(Index n, const char* rest) {
    return std::to_string(n) + " states" + rest;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    if (opts.state_count < 10)
        throw std::invalid_argument("verification: corpus needs at least 10 states");
    const Index n = opts.state_count;

    std::vector<CorpusEntry> corpus;
    corpus.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) corpus.push_back(make_state(i, opts.seed));

    std::vector<std::vector<MeasurementBasis>> bases;
    bases.reserve(corpus.size());
    for (Index i = 0; i < n; ++i) {
        const Index dy = corpus[i].rho.dim_y();
        bases.push_back({basis_from_angles(dy, std::vector<double>(basis_angle_count(dy), 0.0)),
                         random_basis(dy, detail::stream_seed(opts.seed, 100000 + i))});
    }

    SearchConfig cfg;  // trimmed for suite runtime; accuracy still far beyond the tolerances
    cfg.grid_resolution = 32;
    cfg.refine_iterations = 400;
    cfg.tolerance = 1e-8;
    cfg.seed_count = 4;
    cfg.deterministic_seed = opts.seed;

    std::vector<CheckResult> checks;

    {  // measuring twice is measuring once
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            for (const MeasurementBasis& b : bases[i]) {
                const Matrix once = apply_channel(rho.matrix(), rho.dim_x(), rho.dim_y(), b);
                const Matrix twice = apply_channel(once, rho.dim_x(), rho.dim_y(), b);
                worst = std::max(worst, (twice - once).cwiseAbs().maxCoeff());
            }
        }
        checks.push_back({"channel-idempotence", worst <= 1e-12, worst, 1e-12,
                          states_detail(n, " x 2 bases")});
    }

    {  // the measured state is indistinguishable from the input on functions of itself:
       // Tr[rho g(M)] = Tr[M g(M)] for M = Pi_Y[rho], g = x and x^2
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            for (const MeasurementBasis& b : bases[i]) {
                Matrix m = apply_channel(rho.matrix(), rho.dim_x(), rho.dim_y(), b);
                if (opts.inject_channel_fault) {
                    m(0, 0) += 1e-3;
                    m(1, 1) -= 1e-3;
                }
                const Matrix m2 = m * m;
                worst = std::max(worst, std::abs((rho.matrix() * m).trace().real() -
                                                 m2.trace().real()));
                worst = std::max(worst, std::abs((rho.matrix() * m2).trace().real() -
                                                 (m2 * m).trace().real()));
            }
        }
        checks.push_back({"channel-selfadjoint-trace", worst <= 1e-10, worst, 1e-10,
                          states_detail(n, " x 2 bases, g in {x, x^2}")});
    }

    {  // Tr[(Pi_Y[rho])^q] assembled from outcome probabilities and conditionals
        const double qs[] = {0.5, 1.5, 2.0, 3.0};
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            const Index dx = rho.dim_x(), dy = rho.dim_y();
            const bool full_rank = rho.spectrum()[0] > 1e-8;
            for (const MeasurementBasis& b : bases[i]) {
                const Matrix m = apply_channel(rho.matrix(), dx, dy, b);
                for (const double q : qs) {
                    if (q < 1.0 && !full_rank) continue;  // x^q ill-conditioned on a kernel
                    const double lhs = power_trace(m, q);
                    double rhs = 0.0;
                    for (Index y = 0; y < dy; ++y) {
                        const RealVector eigs =
                            hermitian_eigenvalues(partial_inner_y(rho.matrix(), dx, dy, b.ket(y)))
                                .cwiseMax(0.0);
                        const double p = eigs.sum();
                        if (p <= tol::outcome) continue;
                        double cond = 0.0;
                        for (Index k = 0; k < eigs.size(); ++k) cond += std::pow(eigs[k] / p, q);
                        rhs += std::pow(p, q) * cond;
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            }
        }
        checks.push_back({"measured-power-decomposition", worst <= 1e-10, worst, 1e-10,
                          states_detail(n, " x 2 bases, q in {0.5 full rank only, 1.5, 2, 3}")});
    }

    {  // powers commute with conditioning: (<y|rho|y>)^q = Tr_Y[(P_y rho P_y)^q]
        const double qs[] = {0.5, 2.0, 3.0};
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            const Index dx = rho.dim_x(), dy = rho.dim_y();
            const bool full_rank = rho.spectrum()[0] > 1e-8;
            for (const MeasurementBasis& b : bases[i]) {
                for (Index y = 0; y < dy; ++y) {
                    const Matrix block = partial_inner_y(rho.matrix(), dx, dy, b.ket(y));
                    const Matrix sandwich = tensor_product(identity(dx), b.projector(y)) *
                                            rho.matrix() *
                                            tensor_product(identity(dx), b.projector(y));
                    for (const double q : qs) {
                        if (q < 1.0 && !full_rank) continue;  // x^q ill-conditioned on a kernel
                        const Matrix lhs = matrix_power_psd(block, q);
                        const Matrix rhs =
                            partial_trace(matrix_power_psd(sandwich, q), dx, dy, Side::Y);
                        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
                    }
                }
            }
        }
        checks.push_back({"block-power-partial-trace", worst <= 1e-10, worst, 1e-10,
                          states_detail(n, " x 2 bases, q in {0.5 full rank only, 2, 3}")});
    }

    {  // sum_y p_y^q equals Tr[(Pi_Y[rho_Y])^q] computed on the marginal alone
        const double qs[] = {0.5, 1.5, 2.0, 3.0};
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            const Index dx = rho.dim_x(), dy = rho.dim_y();
            const Matrix rho_y = partial_trace(rho.matrix(), dx, dy, Side::X);
            for (const MeasurementBasis& b : bases[i]) {
                Matrix measured_marginal = Matrix::Zero(dy, dy);
                for (Index y = 0; y < dy; ++y)
                    measured_marginal += b.projector(y) * rho_y * b.projector(y);
                for (const double q : qs) {
                    double lhs = 0.0;
                    for (Index y = 0; y < dy; ++y) {
                        const double p =
                            partial_inner_y(rho.matrix(), dx, dy, b.ket(y)).trace().real();
                        lhs += std::pow(std::max(p, 0.0), q);
                    }
                    worst = std::max(worst, std::abs(lhs - power_trace(measured_marginal, q)));
                }
            }
        }
        checks.push_back({"marginal-probability-powers", worst <= 1e-10, worst, 1e-10,
                          states_detail(n, " x 2 bases, q in {0.5, 1.5, 2, 3}")});
    }

    {  // measured-state entropy = marginal part + conditional part
        const double qs[] = {0.5, 1.0, 1.5, 2.0, 3.0};
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            const bool full_rank = rho.spectrum()[0] > 1e-8;
            for (const MeasurementBasis& b : bases[i]) {
                const Matrix m = apply_channel(rho.matrix(), rho.dim_x(), rho.dim_y(), b);
                for (const double q : qs) {
                    if (q < 1.0 && !full_rank) continue;  // x^q ill-conditioned on a kernel
                    const EntropicIndex qi(q);
                    const double lhs = entropy_of(m, qi) - tsallis_entropy(rho, qi);
                    worst = std::max(worst, std::abs(lhs - q_conditional_form(rho, qi, b)));
                }
            }
        }
        checks.push_back({"joint-entropy-additivity", worst <= 1e-10, worst, 1e-10,
                          states_detail(n, " x 2 bases, q in {0.5 full rank only, 1, 1.5, 2, 3}")});
    }

    {  // measuring a pure state: the joint q entropy stays at or above the
       // unmeasured marginal's (on power traces the direction follows sign(q-1),
       // so the entropy form is the one that holds uniformly in q)
        const double qs[] = {0.5, 1.5, 2.0, 3.0};
        double worst = -1.0;
        Index pure_count = 0;
        for (Index i = 0; i < n; ++i) {
            if (!corpus[i].pure) continue;
            ++pure_count;
            const DensityMatrix& rho = corpus[i].rho;
            const Matrix rho_y = partial_trace(rho.matrix(), rho.dim_x(), rho.dim_y(), Side::X);
            for (const MeasurementBasis& b : bases[i]) {
                const Matrix m = apply_channel(rho.matrix(), rho.dim_x(), rho.dim_y(), b);
                for (const double q : qs) {
                    const EntropicIndex qi(q);
                    worst = std::max(worst, entropy_of(rho_y, qi) - entropy_of(m, qi));
                }
            }
        }
        checks.push_back({"pure-measured-entropy-bound", worst <= 1e-10, worst, 1e-10,
                          std::to_string(pure_count) + " pure states x 2 bases, q in {0.5, 1.5, 2, 3}"});
    }

    {  // unread measurement leaves the other side's marginal alone
        double worst = 0.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            for (const MeasurementBasis& b : bases[i]) {
                const ConditionalEnsemble e = conditional_ensemble(rho, b);
                Matrix avg = Matrix::Zero(rho.dim_x(), rho.dim_x());
                for (Index y = 0; y < rho.dim_y(); ++y)
                    avg += e.probabilities[y] * e.conditionals[y].matrix();
                worst = std::max(
                    worst, (avg - partial_trace(rho.matrix(), rho.dim_x(), rho.dim_y(), Side::Y))
                               .cwiseAbs()
                               .maxCoeff());
            }
        }
        checks.push_back({"conditional-average-law", worst <= 1e-10, worst, 1e-10,
                          states_detail(n, " x 2 bases")});
    }

    {  // the q entropy cannot decrease under an unread local measurement
        const double qs[] = {0.3, 0.7, 1.0, 1.5, 2.0, 3.0, 8.0};
        double worst = -1.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            for (const MeasurementBasis& b : bases[i]) {
                const Matrix m = apply_channel(rho.matrix(), rho.dim_x(), rho.dim_y(), b);
                for (const double q : qs) {
                    const EntropicIndex qi(q);
                    worst = std::max(worst, tsallis_entropy(rho, qi) - entropy_of(m, qi));
                }
            }
        }
        checks.push_back({"entropy-nondecrease-pointwise", worst <= 1e-9, worst, 1e-9,
                          states_detail(n, " x 2 bases, q in {0.3, 0.7, 1, 1.5, 2, 3, 8}")});
    }

    {  // deviation never exceeds its first-order (Klein) bound at any basis;
       // q < 1 needs f' on the spectrum, so those run on full-rank states only
        const double qs_all[] = {1.0, 1.5, 2.0, 3.0};
        const double qs_fullrank[] = {0.3, 0.7};
        double worst = -1.0;
        for (Index i = 0; i < n; ++i) {
            const DensityMatrix& rho = corpus[i].rho;
            const bool full_rank = rho.spectrum()[0] > 1e-8;
            for (const MeasurementBasis& b : bases[i]) {
                for (const double q : qs_all) {
                    const ConvexFunction f = q_convex_function(EntropicIndex(q));
                    worst = std::max(worst, delta_B_at_basis(rho, b, f) -
                                                delta_B_bound_at_basis(rho, b, f));
                }
                if (!full_rank) continue;
                for (const double q : qs_fullrank) {
                    const ConvexFunction f = q_convex_function(EntropicIndex(q));
                    worst = std::max(worst, delta_B_at_basis(rho, b, f) -
                                                delta_B_bound_at_basis(rho, b, f));
                }
            }
        }
        checks.push_back({"klein-bound-pointwise", worst <= 1e-9, worst, 1e-9,
                          states_detail(n, " x 2 bases, q in {1, 1.5, 2, 3} (+{0.3, 0.7} full rank)")});
    }

    {  // minimized value: nonnegative, and below the minimized bound
        const double qs[] = {0.5, 1.0, 2.0};
        double worst_negative = -1.0;
        double worst_order = -1.0;
        Index runs = 0;
        for (Index k = 0; k * 17 < n && k < 11; ++k) {
            const DensityMatrix& rho = corpus[k * 17].rho;
            const bool full_rank = rho.spectrum()[0] > 1e-8;
            for (const double q : qs) {
                if (q < 1.0 && !full_rank) continue;  // bound diverges on a kernel
                const DiscordResult r = q_discord(rho, EntropicIndex(q), cfg);
                worst_negative = std::max(worst_negative, -r.value);
                worst_order = std::max(worst_order, r.value - r.upper_bound);
                ++runs;
            }
        }
        checks.push_back({"optimized-nonnegativity", worst_negative <= 1e-9, worst_negative, 1e-9,
                          std::to_string(runs) + " optimizations, q in {0.5, 1, 2}"});
        checks.push_back({"optimized-bound-ordering", worst_order <= 1e-9, worst_order, 1e-9,
                          std::to_string(runs) + " optimizations, q in {0.5, 1, 2}"});
    }

    {  // conditioning is vacuous on product states
        const double qs[] = {1.0, 2.0};
        double worst = 0.0;
        Index pairs = 0;
        for (Index k = 0; k < 6; ++k) {
            const DensityMatrix& a = corpus[(k * 37 + 2) % n].rho;
            const DensityMatrix& b = corpus[(k * 53 + 9) % n].rho;
            const Matrix rx = partial_trace(a.matrix(), a.dim_x(), a.dim_y(), Side::Y);
            const Matrix ry = partial_trace(b.matrix(), b.dim_x(), b.dim_y(), Side::X);
            const DensityMatrix product(a.dim_x(), b.dim_y(), tensor_product(rx, ry));
            ++pairs;
            for (const double q : qs)
                worst = std::max(worst,
                                 std::abs(min_delta(product, q_convex_function(EntropicIndex(q)), cfg)));
        }
        checks.push_back({"product-state-zero", worst <= 1e-8, worst, 1e-8,
                          std::to_string(pairs) + " marginal products, q in {1, 2}"});
    }

    {  // the measures only see the state up to local basis changes
        const double qs[] = {1.0, 2.0};
        double worst = 0.0;
        Index pairs = 0;
        for (Index k = 0; k < 6; ++k) {
            const Index idx = (k * 31 + 5) % n;
            const DensityMatrix& rho = corpus[idx].rho;
            const Index dx = rho.dim_x(), dy = rho.dim_y();
            const Matrix u = tensor_product(
                random_basis(dx, detail::stream_seed(opts.seed, 200000 + idx)).columns(),
                random_basis(dy, detail::stream_seed(opts.seed, 300000 + idx)).columns());
            const DensityMatrix rotated(dx, dy, u * rho.matrix() * u.adjoint());
            ++pairs;
            for (const double q : qs) {
                const ConvexFunction f = q_convex_function(EntropicIndex(q));
                worst = std::max(worst,
                                 std::abs(min_delta(rotated, f, cfg) - min_delta(rho, f, cfg)));
            }
        }
        checks.push_back({"local-unitary-invariance", worst <= 1e-6, worst, 1e-6,
                          std::to_string(pairs) + " random local rotations, q in {1, 2}"});
    }

    {  // mixing a vanishing fraction of another state perturbs the measure vanishingly
        const ConvexFunction f = q_convex_function(EntropicIndex(2.0));
        const double eps[] = {1e-2, 1e-3, 1e-4};
        double worst = -1.0;
        Index triples = 0;
        for (const Index idx : {Index(11), Index(73), Index(137), Index(199)}) {
            if (idx >= n) continue;
            const DensityMatrix& rho = corpus[idx].rho;
            const DensityMatrix& tau = corpus[idx - 1].rho;  // same shape by corpus layout
            const double base = min_delta(rho, f, cfg);
            double previous = -1.0;
            for (const double e : eps) {
                const DensityMatrix sigma(rho.dim_x(), rho.dim_y(),
                                          (1.0 - e) * rho.matrix() + e * tau.matrix());
                const double diff = std::abs(min_delta(sigma, f, cfg) - base);
                if (previous >= 0.0) worst = std::max(worst, diff - previous);
                previous = diff;
            }
            ++triples;
        }
        checks.push_back({"mixing-continuity", worst <= 1e-7, worst, 1e-7,
                          std::to_string(triples) +
                              " states, eps in {1e-2, 1e-3, 1e-4} monotone"});
    }

    return checks;
}

bool write_verification_report(const std::vector<CheckResult>& checks, const VerifyOptions& opts,
                               std::ostream& out) {
    out << "verification suite: seed " << opts.seed << ", " << opts.state_count << " states";
    if (opts.inject_channel_fault) out << ", channel fault injected";
    out << "\n";
    std::size_t width = 0;
    for (const CheckResult& c : checks) width = std::max(width, c.name.size());
    Index passed = 0;
    for (const CheckResult& c : checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
            << std::string(width - c.name.size() + 2, ' ') << "worst " << fmt_real_shortest(c.worst)
            << "  tol " << fmt_real_shortest(c.tolerance) << "  (" << c.detail << ")\n";
        if (c.passed) ++passed;
    }
    out << "summary: " << passed << "/" << checks.size() << " checks passed\n";
    return passed == static_cast<Index>(checks.size());
}

}  // namespace qdiscord
