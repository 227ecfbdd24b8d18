#include "qdiscord/states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdiscord/format.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/rng.hpp"

namespace qdiscord {

namespace {

Matrix bell_matrix(double c1, double c2, double c3) {
    return 0.25 * (identity(4) + c1 * tensor_product(sigma_x(), sigma_x()) +
                   c2 * tensor_product(sigma_y(), sigma_y()) +
                   c3 * tensor_product(sigma_z(), sigma_z()));
}

}  // namespace

BlochCorrelation::BlochCorrelation(double c1, double c2, double c3) : c1_(c1), c2_(c2), c3_(c3) {
    const RealVector eigs = hermitian_eigenvalues(bell_matrix(c1, c2, c3));
    if (eigs[0] < tol::psd)
        throw std::domain_error("correlation vector (" + fmt_real(c1) + ", " + fmt_real(c2) + ", " +
                                fmt_real(c3) + ") is not a state: eigenvalue " + fmt_real(eigs[0]) +
                                " is negative");
}

double BlochCorrelation::max_abs() const {
    return std::max({std::abs(c1_), std::abs(c2_), std::abs(c3_)});
}

DensityMatrix bell_diagonal(const BlochCorrelation& c) {
    return DensityMatrix(2, 2, bell_matrix(c.c1(), c.c2(), c.c3()));
}

DensityMatrix werner(double v) { return bell_diagonal(BlochCorrelation(-v, -v, -v)); }

DensityMatrix uv_state(double u, double v) {
    return bell_diagonal(BlochCorrelation(u, v, (u - v) / 2.0));
}

bool uv_entangled_flag(double u, double v) { return v > (2.0 - u) / 3.0; }

DensityMatrix max_entangled(Index d) {
    if (d < 2) throw std::invalid_argument("max_entangled: dimension must be >= 2");
    Vector psi = Vector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index i = 0; i < d; ++i) psi[i * d + i] = amp;
    return DensityMatrix::pure(d, d, psi);
}

DensityMatrix random_pure(Index dim_x, Index dim_y, std::uint64_t seed) {
    if (dim_x < 2 || dim_y < 2)
        throw std::invalid_argument("random_pure: both dimensions must be >= 2");
    detail::Rng rng(seed);
    Vector psi(dim_x * dim_y);
    for (Index i = 0; i < psi.size(); ++i) psi[i] = Complex(rng.gaussian(), rng.gaussian());
    psi /= psi.norm();
    return DensityMatrix::pure(dim_x, dim_y, psi);
}

DensityMatrix random_mixed(Index dim_x, Index dim_y, Index rank, std::uint64_t seed) {
    if (dim_x < 2 || dim_y < 2)
        throw std::invalid_argument("random_mixed: both dimensions must be >= 2");
    const Index d = dim_x * dim_y;
    if (rank < 1 || rank > d)
        throw std::invalid_argument("random_mixed: rank must lie in [1, dimX*dimY]");
    detail::Rng rng(seed);
    // purification amplitudes; tracing out the rank-dimensional environment
    Matrix amps(d, rank);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < rank; ++j) amps(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Matrix rho = amps * amps.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(dim_x, dim_y, std::move(rho));
}

void save_state(const DensityMatrix& rho, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_state: cannot open '" + path + "' for writing");
    out << "QDM 1 " << rho.dim_x() << ' ' << rho.dim_y() << '\n';
    const Matrix& m = rho.matrix();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << fmt_complex(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_state: write to '" + path + "' failed");
}

DensityMatrix load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_state: cannot open '" + path + "'");

    auto fail = [&](long line, const std::string& msg) -> std::runtime_error {
        return std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
    };

    std::string line;
    long line_no = 0;
    auto next_content_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_content_line()) throw fail(line_no, "missing 'QDM 1 <dimX> <dimY>' header");
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    Index dim_x = 0, dim_y = 0;
    if (!(header >> magic >> version >> dim_x >> dim_y) || magic != "QDM" || version != 1 ||
        dim_x < 1 || dim_y < 1)
        throw fail(line_no, "malformed header, expected 'QDM 1 <dimX> <dimY>'");
    const Index d = dim_x * dim_y;
    if (d > kMaxDimension) throw fail(line_no, "total dimension exceeds " + std::to_string(kMaxDimension));

    Matrix m(d, d);
    std::vector<long> row_line(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) {
        if (!next_content_line()) throw fail(line_no, "expected " + std::to_string(d) + " matrix rows, found " + std::to_string(i));
        row_line[i] = line_no;
        std::istringstream row(line);
        std::string token;
        for (Index j = 0; j < d; ++j) {
            if (!(row >> token))
                throw fail(line_no, "expected " + std::to_string(d) + " entries, got " + std::to_string(j));
            try {
                m(i, j) = parse_complex(token);
            } catch (const std::invalid_argument& e) {
                throw fail(line_no, "entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
            }
        }
        std::string extra;
        if (row >> extra) throw fail(line_no, "trailing content after " + std::to_string(d) + " entries");
    }
    if (next_content_line()) throw fail(line_no, "unexpected content after the matrix rows");

    // diagnostics before the generic DensityMatrix validation, so errors carry
    // file positions
    for (Index i = 0; i < d; ++i)
        for (Index j = i; j < d; ++j) {
            const double viol = std::abs(m(i, j) - std::conj(m(j, i)));
            if (viol > tol::hermitian)
                throw fail(row_line[i], "Hermiticity violation at entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + "): mismatch " + fmt_real(viol));
        }
    const double trace = m.trace().real();
    if (std::abs(trace - 1.0) > tol::trace)
        throw fail(row_line[0], "trace violation: Tr = " + fmt_real(trace));
    const RealVector eigs = hermitian_eigenvalues(m);
    if (eigs[0] < tol::psd)
        throw fail(row_line[0], "not positive semidefinite: eigenvalue " + fmt_real(eigs[0]));

    return DensityMatrix(dim_x, dim_y, std::move(m));
}

namespace {

void check_parameter_keys(const StateSpec& spec, std::initializer_list<const char*> required,
                          std::initializer_list<const char*> optional = {}) {
    for (const char* r : required)
        if (!spec.parameters.count(r))
            throw std::invalid_argument("state spec '" + spec.kind + "': missing parameter '" +
                                        r + "'");
    for (const auto& [key, value] : spec.parameters) {
        (void)value;
        const bool known = std::any_of(required.begin(), required.end(),
                                       [&](const char* r) { return key == r; }) ||
                           std::any_of(optional.begin(), optional.end(),
                                       [&](const char* o) { return key == o; });
        if (!known)
            throw std::invalid_argument("state spec '" + spec.kind + "': unknown parameter '" +
                                        key + "'");
    }
}

Index integer_parameter(const StateSpec& spec, const char* name) {
    const double v = spec.parameters.at(name);
    const auto rounded = static_cast<Index>(std::llround(v));
    if (std::abs(v - static_cast<double>(rounded)) > 0.0 || rounded < 0)
        throw std::invalid_argument("state spec '" + spec.kind + "': parameter '" + name +
                                    "' must be a nonnegative integer");
    return rounded;
}

}  // namespace

DensityMatrix realize(const StateSpec& spec) {
    const auto param = [&](const char* name) { return spec.parameters.at(name); };
    if (spec.kind == "werner") {
        check_parameter_keys(spec, {"v"});
        return werner(param("v"));
    }
    if (spec.kind == "uv") {
        check_parameter_keys(spec, {"u", "v"});
        return uv_state(param("u"), param("v"));
    }
    if (spec.kind == "bell-diag") {
        check_parameter_keys(spec, {"c1", "c2", "c3"});
        return bell_diagonal(BlochCorrelation(param("c1"), param("c2"), param("c3")));
    }
    if (spec.kind == "max-entangled") {
        check_parameter_keys(spec, {"d"});
        return max_entangled(integer_parameter(spec, "d"));
    }
    if (spec.kind == "pure-random") {
        check_parameter_keys(spec, {"dimX", "dimY", "seed"});
        return random_pure(integer_parameter(spec, "dimX"), integer_parameter(spec, "dimY"),
                           static_cast<std::uint64_t>(integer_parameter(spec, "seed")));
    }
    if (spec.kind == "mixed-random") {
        check_parameter_keys(spec, {"dimX", "dimY", "seed"}, {"rank"});
        const Index dx = integer_parameter(spec, "dimX");
        const Index dy = integer_parameter(spec, "dimY");
        const Index rank = spec.parameters.count("rank") ? integer_parameter(spec, "rank") : dx * dy;
        return random_mixed(dx, dy, rank, static_cast<std::uint64_t>(integer_parameter(spec, "seed")));
    }
    if (spec.kind == "file") {
        if (spec.path.empty())
            throw std::invalid_argument("state spec 'file': missing path");
        if (!spec.parameters.empty())
            throw std::invalid_argument("state spec 'file': takes no parameters");
        return load_state(spec.path);
    }
    throw std::invalid_argument("unknown state kind '" + spec.kind + "'");
}

}  // namespace qdiscord
