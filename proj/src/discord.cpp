#include "qdiscord/discord.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdiscord/linalg.hpp"

namespace qdiscord {

namespace {

double trace_f(const DensityMatrix& rho, const ConvexFunction& f) {
    const RealVector& lam = rho.spectrum();
    double t = 0.0;
    for (Index i = 0; i < lam.size(); ++i) t += f.value(lam[i]);
    return t;
}

// Tr f(Pi_Y[rho]) = sum over conditional-block eigenvalues, never forming the
// full measured matrix
double trace_f_measured(const Matrix& rho, Index dim_x, Index dim_y, const MeasurementBasis& basis,
                        const ConvexFunction& f) {
    double t = 0.0;
    for (Index y = 0; y < dim_y; ++y) {
        const RealVector eigs = hermitian_eigenvalues(partial_inner_y(rho, dim_x, dim_y, basis.ket(y)));
        for (Index i = 0; i < eigs.size(); ++i) t += f.value(eigs[i]);
    }
    return t;
}

// f'(rho) on the clipped spectrum
Matrix derivative_matrix(const DensityMatrix& rho, const ConvexFunction& f) {
    const Spectrum s = spectral_decompose(rho.matrix());
    const RealVector lam = clip_spectrum(s.eigenvalues);
    Vector g(lam.size());
    for (Index i = 0; i < lam.size(); ++i) g[i] = f.derivative(lam[i]);
    return s.eigenvectors * g.asDiagonal() * s.eigenvectors.adjoint();
}

// Klein-bound search; Tr(Pi_Y[rho] G) = sum_y Tr(B_y(rho) B_y(G))
MinimizeResult bound_minimize(const DensityMatrix& rho, const ConvexFunction& f,
                              const SearchConfig& cfg) {
    const Matrix g = derivative_matrix(rho, f);
    const Matrix& m = rho.matrix();
    const double rho_term = (m * g).trace().real();
    const Index dx = rho.dim_x();
    const Index dy = rho.dim_y();
    const BasisObjective objective = [&](const MeasurementBasis& b) {
        double measured = 0.0;
        for (Index y = 0; y < dy; ++y) {
            const Vector ket = b.ket(y);
            measured +=
                (partial_inner_y(m, dx, dy, ket) * partial_inner_y(g, dx, dy, ket)).trace().real();
        }
        return rho_term - measured;
    };
    return minimize(objective, dy, cfg);
}

}  // namespace

ConvexFunction q_convex_function(EntropicIndex q) {
    ConvexFunction f;
    f.strictness = Convexity::strictly_convex;
    if (q.von_neumann_branch()) {
        f.value = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
        f.derivative = [](double x) { return std::log(std::max(x, tol::log_floor)) + 1.0; };
    } else {
        const double qq = q.q;
        f.value = [qq](double x) { return x > 0.0 ? (std::pow(x, qq) - x) / (qq - 1.0) : 0.0; };
        f.derivative = [qq](double x) {
            return (qq * std::pow(std::max(x, tol::log_floor), qq - 1.0) - 1.0) / (qq - 1.0);
        };
    }
    return f;
}

double convexity_defect(const ConvexFunction& f, double lo, double hi, Index samples) {
    if (samples < 2 || !(hi > lo))
        throw std::invalid_argument("convexity_defect: need an interval and >= 2 samples");
    const double step = (hi - lo) / static_cast<double>(samples - 1);
    double worst = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < samples; ++i)
        for (Index j = i; j < samples; ++j) {
            const double a = lo + step * static_cast<double>(i);
            const double b = lo + step * static_cast<double>(j);
            worst = std::max(worst, f.value(0.5 * (a + b)) - 0.5 * (f.value(a) + f.value(b)));
        }
    return worst;
}

double delta_B_at_basis(const DensityMatrix& rho, const MeasurementBasis& basis,
                        const ConvexFunction& f) {
    if (basis.dim_y() != rho.dim_y())
        throw std::invalid_argument("delta_B_at_basis: basis does not match subsystem Y");
    const double d = trace_f(rho, f) -
                     trace_f_measured(rho.matrix(), rho.dim_x(), rho.dim_y(), basis, f);
    if (!std::isfinite(d))
        throw std::domain_error("delta_B_at_basis: convex function undefined on the spectrum");
    return d;
}

double delta_B_bound_at_basis(const DensityMatrix& rho, const MeasurementBasis& basis,
                              const ConvexFunction& f) {
    if (basis.dim_y() != rho.dim_y())
        throw std::invalid_argument("delta_B_bound_at_basis: basis does not match subsystem Y");
    const Matrix g = derivative_matrix(rho, f);
    const Matrix& m = rho.matrix();
    const Index dx = rho.dim_x();
    const Index dy = rho.dim_y();
    double measured = 0.0;
    for (Index y = 0; y < dy; ++y) {
        const Vector ket = basis.ket(y);
        measured += (partial_inner_y(m, dx, dy, ket) * partial_inner_y(g, dx, dy, ket)).trace().real();
    }
    return (m * g).trace().real() - measured;
}

DiscordResult delta_B(const DensityMatrix& rho, const ConvexFunction& f,
                      const SearchConfig& search) {
    const BasisObjective objective = [&](const MeasurementBasis& b) {
        return delta_B_at_basis(rho, b, f);
    };
    MinimizeResult v = minimize(objective, rho.dim_y(), search);
    const MinimizeResult u = bound_minimize(rho, f, search);
    return {v.value, u.value, std::move(v.basis), v.evaluations + u.evaluations,
            v.converged && u.converged};
}

double delta_B_upper_bound(const DensityMatrix& rho, const ConvexFunction& f,
                           const SearchConfig& search) {
    return bound_minimize(rho, f, search).value;
}

DiscordResult q_discord(const DensityMatrix& rho, EntropicIndex q, const SearchConfig& search) {
    return delta_B(rho, q_convex_function(q), search);
}

double q_conditional_form(const DensityMatrix& rho, EntropicIndex q,
                          const MeasurementBasis& basis) {
    if (basis.dim_y() != rho.dim_y())
        throw std::invalid_argument("q_conditional_form: basis does not match subsystem Y");
    const Index dy = rho.dim_y();
    RealVector p(dy);
    double conditional_term = 0.0;
    for (Index y = 0; y < dy; ++y) {
        const RealVector eigs =
            hermitian_eigenvalues(partial_inner_y(rho.matrix(), rho.dim_x(), dy, basis.ket(y)))
                .cwiseMax(0.0);
        const double py = eigs.sum();
        p[y] = py;
        if (py <= tol::outcome) continue;  // p^q S_q weight vanishes with the branch
        const double weight = q.von_neumann_branch() ? py : std::pow(py, q.q);
        conditional_term += weight * tsallis_entropy(eigs / py, q);
    }
    return tsallis_entropy(p, q) + conditional_term - tsallis_entropy(rho, q);
}

DiscordResult entropic_discord(const DensityMatrix& rho, const SearchConfig& search) {
    return q_discord(rho, EntropicIndex(1.0), search);
}

DiscordResult geometric_discord(const DensityMatrix& rho, const SearchConfig& search) {
    const Matrix& m = rho.matrix();
    const Index dx = rho.dim_x();
    const Index dy = rho.dim_y();
    const BasisObjective objective = [&](const MeasurementBasis& b) {
        return (m - apply_channel(m, dx, dy, b)).squaredNorm();
    };
    MinimizeResult v = minimize(objective, dy, search);
    const MinimizeResult u = bound_minimize(rho, q_convex_function(EntropicIndex(2.0)), search);
    return {v.value, u.value, std::move(v.basis), v.evaluations + u.evaluations,
            v.converged && u.converged};
}

DiscordResult joint_disturbance(const DensityMatrix& rho, const ConvexFunction& f,
                                const SearchConfig& search) {
    const Index dx = rho.dim_x();
    const Index dy = rho.dim_y();
    const Index kx = basis_angle_count(dx);
    const Index ky = basis_angle_count(dy);
    const Matrix& m = rho.matrix();

    const auto split = [&](const std::vector<double>& a) {
        const std::vector<double> ax(a.begin(), a.begin() + kx);
        const std::vector<double> ay(a.begin() + kx, a.end());
        return std::pair{basis_from_angles(dx, ax), basis_from_angles(dy, ay)};
    };

    const double tf = trace_f(rho, f);
    const AngleObjective value_objective = [&](const std::vector<double>& a) {
        const auto [bx, by] = split(a);
        // Pi[rho] is diagonal in the product basis, eigenvalues d_xy
        const Eigen::MatrixXd d = joint_probabilities(m, bx, by);
        double measured = 0.0;
        for (Index x = 0; x < dx; ++x)
            for (Index y = 0; y < dy; ++y) measured += f.value(d(x, y));
        return tf - measured;
    };
    AngleMinimizeResult v = minimize_angles(value_objective, kx + ky, search);

    const Matrix g = derivative_matrix(rho, f);
    const double rho_term = (m * g).trace().real();
    const AngleObjective bound_objective = [&](const std::vector<double>& a) {
        const auto [bx, by] = split(a);
        const Eigen::MatrixXd dr = joint_probabilities(m, bx, by);
        const Eigen::MatrixXd dg = joint_probabilities(g, bx, by);
        return rho_term - (dr.array() * dg.array()).sum();
    };
    const AngleMinimizeResult u = minimize_angles(bound_objective, kx + ky, search);

    auto [bx, by] = split(v.angles);
    (void)bx;
    return {v.value, u.value, std::move(by), v.evaluations + u.evaluations,
            v.converged && u.converged};
}

BellDiagonalValues bell_diagonal_q_discord(const BlochCorrelation& c, EntropicIndex q) {
    const double cs[3] = {c.c1(), c.c2(), c.c3()};
    // Bell-state signatures: lambda_t = (1 + sum_k s[t][k] c_k)/4 and the same
    // sign s[t][k] is <t|sigma_k (x) sigma_k|t>, which fixes the pairing in the
    // measurement-direction term below.
    static constexpr int sgn[4][3] = {{+1, -1, +1}, {-1, +1, +1}, {+1, +1, -1}, {-1, -1, -1}};
    double lam[4];
    bool singular = false;
    for (int t = 0; t < 4; ++t) {
        lam[t] = 0.25 * (1.0 + sgn[t][0] * cs[0] + sgn[t][1] * cs[1] + sgn[t][2] * cs[2]);
        if (lam[t] < 1e-14) {  // exact zero up to rounding of the c sums
            lam[t] = 0.0;
            singular = true;
        }
    }

    const bool vn = q.von_neumann_branch();
    const double qq = q.q;
    BellDiagonalValues out{};
    if (singular && (vn || qq < 1.0)) {
        // ln(lambda) / lambda^{q-1} diverges on the kernel, and every product
        // measurement keeps weight there: the bound is genuinely infinite
        out.upper_bound = std::numeric_limits<double>::infinity();
    } else {
        // g(lambda) = lambda^{q-1}, or ln(lambda) on the q->1 branch
        const auto g = [&](double t) { return vn ? std::log(t) : std::pow(t, qq - 1.0); };
        double base = 0.0;
        for (int t = 0; t < 4; ++t) base += (lam[t] - 0.25) * g(lam[t]);
        // the bound at a measurement along Bloch direction n is affine in n_k^2, so
        // the optimum over bases sits on a Pauli axis: take the best of the three
        const double pref = vn ? 1.0 : qq / (qq - 1.0);
        out.upper_bound = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k) {
            double corr = 0.0;
            for (int t = 0; t < 4; ++t) corr += sgn[t][k] * g(lam[t]);
            out.upper_bound = std::min(out.upper_bound, pref * (base - 0.25 * cs[k] * corr));
        }
    }

    const double cm = c.max_abs();
    if (vn) {
        const auto plogp = [](double t) { return t > 0.0 ? t * std::log(t) : 0.0; };
        double sum = 0.0;
        for (int t = 0; t < 4; ++t) sum += plogp(lam[t]);
        out.value = sum - 0.5 * (plogp(1.0 + cm) + plogp(1.0 - cm)) + 2.0 * std::log(2.0);
    } else {
        double sum = 0.0;
        for (int t = 0; t < 4; ++t) sum += std::pow(lam[t], qq);
        out.value =
            (sum - (std::pow(1.0 + cm, qq) + std::pow(1.0 - cm, qq)) / std::pow(2.0, 2.0 * qq - 1.0)) /
            (qq - 1.0);
    }
    return out;
}

double pure_state_q_discord(const Vector& psi, Index dim_x, Index dim_y, EntropicIndex q) {
    return tsallis_entropy(marginal_y(DensityMatrix::pure(dim_x, dim_y, psi)), q);
}

std::optional<BlochCorrelation> detect_bell_diagonal(const DensityMatrix& rho) {
    if (rho.dim_x() != 2 || rho.dim_y() != 2) return std::nullopt;
    const Matrix& m = rho.matrix();
    const double c1 = (m * tensor_product(sigma_x(), sigma_x())).trace().real();
    const double c2 = (m * tensor_product(sigma_y(), sigma_y())).trace().real();
    const double c3 = (m * tensor_product(sigma_z(), sigma_z())).trace().real();
    try {
        BlochCorrelation c(c1, c2, c3);
        if ((m - bell_diagonal(c).matrix()).cwiseAbs().maxCoeff() <= 1e-10) return c;
    } catch (const std::domain_error&) {
        // boundary-of-PSD noise: no fast path
    }
    return std::nullopt;
}

std::optional<Vector> detect_pure(const DensityMatrix& rho) {
    const Matrix& m = rho.matrix();
    if ((m * m).trace().real() < 1.0 - 1e-10) return std::nullopt;
    const Spectrum s = spectral_decompose(m);
    return Vector(s.eigenvectors.col(s.eigenvectors.cols() - 1));
}

}  // namespace qdiscord
