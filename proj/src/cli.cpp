#include "qdiscord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/entropy.hpp"
#include "qdiscord/format.hpp"
#include "qdiscord/parallel.hpp"

namespace qdiscord {

namespace {

constexpr std::size_t npos = std::string::npos;

void append_range(std::vector<double>& qs, const std::string& token) {
    const std::size_t c1 = token.find(':');
    if (c1 == npos) {
        qs.push_back(parse_real(token));
        return;
    }
    const std::size_t c2 = token.find(':', c1 + 1);
    if (c2 == npos || token.find(':', c2 + 1) != npos)
        throw std::invalid_argument("q list: a range is lo:hi:count, got '" + token + "'");
    const double lo = parse_real(token.substr(0, c1));
    const double hi = parse_real(token.substr(c1 + 1, c2 - c1 - 1));
    const double count_raw = parse_real(token.substr(c2 + 1));
    const long long count = std::llround(count_raw);
    if (count < 1 || static_cast<double>(count) != count_raw)
        throw std::invalid_argument("q list: range count must be a positive integer: '" + token + "'");
    if (hi < lo) throw std::invalid_argument("q list: range needs hi >= lo: '" + token + "'");
    if (count == 1) {
        qs.push_back(lo);
        return;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (long long i = 0; i < count; ++i) qs.push_back(lo + step * static_cast<double>(i));
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

std::optional<double> closed_form_value(const DensityMatrix& rho, double q) {
    if (const auto c = detect_bell_diagonal(rho))
        return bell_diagonal_q_discord(*c, EntropicIndex(q)).value;
    if (const auto psi = detect_pure(rho))
        return pure_state_q_discord(*psi, rho.dim_x(), rho.dim_y(), EntropicIndex(q));
    return std::nullopt;
}

std::string join_angles(const std::vector<double>& angles, const char* separator) {
    std::string joined;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (i > 0) joined += separator;
        joined += fmt_real(angles[i]);
    }
    return joined;
}

void write_measure_row(std::ostream& out, OutputFormat format, const char* measure, double q,
                       const DiscordResult& r, const std::optional<double>& closed) {
    if (format == OutputFormat::csv) {
        out << measure << ',' << fmt_real(q) << ',' << fmt_real(r.value) << ','
            << fmt_real(r.upper_bound) << ',' << (r.converged ? "true" : "false") << ',';
        if (closed) out << fmt_real(*closed);
        out << ',';
        if (closed) out << fmt_real(std::abs(r.value - *closed));
        out << ',' << join_angles(r.optimal_basis.parameters(), ";") << '\n';
        return;
    }
    out << measure << "  q=" << fmt_real_shortest(q) << "  value " << fmt_real(r.value)
        << "  bound " << fmt_real(r.upper_bound) << "  converged "
        << (r.converged ? "yes" : "no");
    if (closed)
        out << "  closed-form " << fmt_real(*closed) << "  |diff| "
            << fmt_real_shortest(std::abs(r.value - *closed));
    out << "  angles [" << join_angles(r.optimal_basis.parameters(), " ") << "]\n";
}

}  // namespace

std::vector<double> parse_q_list(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("q list: empty");
    std::vector<double> qs;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == npos ? npos : comma - pos);
        if (token.empty()) throw std::invalid_argument("q list: empty entry");
        append_range(qs, token);
        if (comma == npos) break;
        pos = comma + 1;
    }
    for (const double q : qs)
        if (!(q > 0.0))
            throw std::invalid_argument("q list: entries must be positive, got " + fmt_real_shortest(q));
    return qs;
}

StateSpec parse_state_spec(const std::string& text) {
    StateSpec spec;
    const std::size_t colon = text.find(':');
    spec.kind = text.substr(0, colon);
    if (spec.kind.empty()) throw std::invalid_argument("state spec: missing kind in '" + text + "'");
    if (colon == npos) return spec;  // bare kind; realize() reports missing parameters
    const std::string rest = text.substr(colon + 1);
    if (spec.kind == "file") {
        if (rest.empty()) throw std::invalid_argument("state spec: file needs a path");
        spec.path = rest;
        return spec;
    }
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = rest.find(',', pos);
        const std::string token = rest.substr(pos, comma == npos ? npos : comma - pos);
        const std::size_t eq = token.find('=');
        if (eq == npos || eq == 0)
            throw std::invalid_argument("state spec: expected key=value, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        if (spec.parameters.count(key))
            throw std::invalid_argument("state spec: duplicate key '" + key + "'");
        spec.parameters[key] = parse_real(token.substr(eq + 1));
        if (comma == npos) break;
        pos = comma + 1;
    }
    return spec;
}

int cmd_compute(const ComputeRequest& req, std::ostream& out) {
    if (req.q_list.empty()) throw std::invalid_argument("compute: q list must be non-empty");
    validate(req.search);
    const DensityMatrix rho = realize(req.state);
    if (req.format == OutputFormat::csv)
        out << "measure,q,value,upper_bound,converged,closed_form,abs_diff,basis_params\n";
    else
        out << "state " << req.state.kind << " (" << rho.dim_x() << " x " << rho.dim_y() << ")\n";
    for (const double q : req.q_list) {
        const DiscordResult r = q_discord(rho, EntropicIndex(q), req.search);
        write_measure_row(out, req.format, "D_q", q, r, closed_form_value(rho, q));
        if (near(q, 1.0))
            write_measure_row(out, req.format, "D_E", 1.0, entropic_discord(rho, req.search),
                              closed_form_value(rho, 1.0));
        if (near(q, 2.0))
            write_measure_row(out, req.format, "D_G", 2.0, geometric_discord(rho, req.search),
                              closed_form_value(rho, 2.0));
    }
    return kExitSuccess;
}

int cmd_sweep(const SweepRequest& req, std::ostream& out) {
    if (req.q_list.empty()) throw std::invalid_argument("sweep: q list must be non-empty");
    validate(req.search);
    const DensityMatrix rho = realize(req.state);
    std::vector<double> qs = req.q_list;
    std::sort(qs.begin(), qs.end());
    struct Point {
        double value = 0.0;
        double upper = 0.0;
        bool converged = false;
    };
    std::vector<Point> points(qs.size());
    parallel_for(static_cast<Index>(qs.size()), [&](Index i) {
        const DiscordResult r =
            q_discord(rho, EntropicIndex(qs[static_cast<std::size_t>(i)]), req.search);
        points[static_cast<std::size_t>(i)] = {r.value, r.upper_bound, r.converged};
    });
    out << "q,D_q,D_q_ub,converged\n";
    for (std::size_t i = 0; i < qs.size(); ++i)
        out << fmt_real(qs[i]) << ',' << fmt_real(points[i].value) << ','
            << fmt_real(points[i].upper) << ',' << (points[i].converged ? "true" : "false")
            << '\n';
    return kExitSuccess;
}

int cmd_parametric(const ParametricRequest& req, std::ostream& out) {
    if (req.samples < 2) throw std::invalid_argument("parametric: needs at least 2 samples");
    std::vector<double> qs = req.q_list;
    if (qs.empty())
        for (int n = 0; n <= 20; ++n) qs.push_back(1.0 + 0.5 * n);
    for (const double q : qs)
        if (!(q > 0.0)) throw std::invalid_argument("parametric: q values must be positive");

    double hi = 0.0;
    std::function<BlochCorrelation(double)> correlation;
    if (req.family == "werner") {
        hi = 1.0;
        correlation = [](double v) { return BlochCorrelation(-v, -v, -v); };
    } else if (req.family == "uv") {
        // u above 0.4 makes the tail of the v range non-PSD, u below 0 is outside the family
        if (!(req.u >= 0.0 && req.u <= 0.4))
            throw std::invalid_argument("parametric: uv family needs u in [0, 0.4]");
        hi = req.u + 2.0 / 3.0;
        correlation = [u = req.u](double v) { return BlochCorrelation(u, v, (u - v) / 2.0); };
    } else {
        throw std::invalid_argument("parametric: family must be werner or uv, got '" + req.family +
                                    "'");
    }

    out << "v,D_1";
    for (const double q : qs) out << ",D_q=" << fmt_real_shortest(q);
    out << '\n';
    for (Index i = 0; i < req.samples; ++i) {
        const double v = hi * static_cast<double>(i) / static_cast<double>(req.samples - 1);
        const BlochCorrelation c = correlation(v);
        const double d1 = bell_diagonal_q_discord(c, EntropicIndex(1.0)).value;
        out << fmt_real(v) << ',' << fmt_real(d1);
        for (const double q : qs) {
            // reusing d1 keeps the q=1 column bit-identical to the work column
            const double dq = near(q, 1.0) ? d1 : bell_diagonal_q_discord(c, EntropicIndex(q)).value;
            out << ',' << fmt_real(dq);
        }
        out << '\n';
    }
    return kExitSuccess;
}

int cmd_verify(const VerifyRequest& req, std::ostream& out) {
    const std::vector<CheckResult> checks = run_verification(req.options);
    return write_verification_report(checks, req.options, out) ? kExitSuccess
                                                               : kExitVerificationFailure;
}

}  // namespace qdiscord
