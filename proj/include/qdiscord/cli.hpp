// cli.hpp — command implementations behind the qdiscord tool: compute
// measures for one state, sweep q, emit the parametric work/discord sweep
// data, and run the verification suite. Kept out of main() so tests can
// drive commands against string streams.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdiscord/optimizer.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/types.hpp"
#include "qdiscord/verify.hpp"

namespace qdiscord {

// exit codes shared by every command
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

// Comma-separated entries, each a positive real or a lo:hi:count linspace
// (count >= 1, hi >= lo), e.g. "1,2,3" or "0.5,1:3:5". Throws
// std::invalid_argument on malformed or nonpositive entries.
std::vector<double> parse_q_list(const std::string& text);

// `kind:key=value,key=value` (e.g. "werner:v=0.5", "bell-diag:c1=0.1,c2=0,c3=-0.2"),
// or `file:PATH`. Key validation happens later in realize(); this parses the
// syntax only. Throws std::invalid_argument on malformed input.
StateSpec parse_state_spec(const std::string& text);

enum class OutputFormat { csv, plain };

struct ComputeRequest {
    StateSpec state;
    std::vector<double> q_list;  // non-empty; rows appear in the given order
    OutputFormat format = OutputFormat::csv;
    SearchConfig search;
};

// One row per q (measure D_q) plus companion rows: D_E after q = 1 and D_G
// after q = 2 when those values are in the list. Rows carry the closed-form
// value and |numeric - closed form| when a fast path applies (maximum-
// marginals or pure states). Always returns success; non-convergence only
// clears the converged flag.
int cmd_compute(const ComputeRequest& req, std::ostream& out);

struct SweepRequest {
    StateSpec state;
    std::vector<double> q_list;  // non-empty; emitted in ascending order
    SearchConfig search;
};

// CSV `q,D_q,D_q_ub,converged`, ascending q. Points are computed in parallel
// (QDISCORD_THREADS) but written in input order.
int cmd_sweep(const SweepRequest& req, std::ostream& out);

struct ParametricRequest {
    std::string family;          // "werner" (v in [0,1]) or "uv" (v in [0, u+2/3])
    double u = 1.0 / 3.0;        // uv family only; needs u in [0, 0.4] for a PSD sweep
    Index samples = 200;
    std::vector<double> q_list;  // empty -> the ladder q = 1 + n/2, n = 0..20
};

// CSV `v,D_1,D_q=...` for the work/discord parametric plot: one row per v
// sample, D_1 the dimensionless excess work and one column per q. Values come
// from the maximum-marginals closed form (both families live there), so the
// D_q=1 column is bit-identical to D_1.
int cmd_parametric(const ParametricRequest& req, std::ostream& out);

struct VerifyRequest {
    VerifyOptions options;
};

// Writes the verification report; exit 0 iff every check passed, else 1.
int cmd_verify(const VerifyRequest& req, std::ostream& out);

}  // namespace qdiscord
