// qdiscord — bipartite quantum correlation measures from local measurements:
// the q-discord family with Klein upper bounds, entropic and geometric cases,
// and the excess-work interpretation. See README.md for the state-spec grammar.
#include <exception>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdiscord/cli.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/types.hpp"
#include "qdiscord/verify.hpp"

namespace {

// stdout unless --output was given
struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        stream = &file;
    }
};

void add_search_flags(CLI::App* cmd, qdiscord::SearchConfig& search) {
    cmd->add_option("--grid", search.grid_resolution,
                    "basis-grid resolution budget (default 64)");
    cmd->add_option("--refine-iterations", search.refine_iterations,
                    "simplex iteration cap per start (default 500)");
    cmd->add_option("--tolerance", search.tolerance,
                    "simplex convergence diameter (default 1e-9)");
    cmd->add_option("--seeds", search.seed_count, "random restarts per search (default 8)");
    cmd->add_option("--opt-seed", search.deterministic_seed,
                    "seed of the restart stream (default 12345)");
}

constexpr const char* kStateHelp =
    "state spec `kind:key=value,...`: werner:v=, uv:u=,v=, bell-diag:c1=,c2=,c3=, "
    "max-entangled:d=, pure-random:dimX=,dimY=,seed=, "
    "mixed-random:dimX=,dimY=,seed=[,rank=], or file:PATH (QDM file)";

}  // namespace

int main(int argc, char** argv) {
    using namespace qdiscord;

    CLI::App app{"bipartite quantum correlation measures: q-discord family, upper bounds,\n"
                 "geometric and entropic cases, and demon excess-work data"};
    app.require_subcommand(1);

    std::string compute_state, compute_q, compute_format = "csv", compute_output;
    SearchConfig compute_search;
    CLI::App* compute =
        app.add_subcommand("compute", "measures for one state at the listed q values");
    compute->add_option("--state", compute_state, kStateHelp)->required();
    compute->add_option("--q", compute_q, "q list: comma entries, each a value or lo:hi:count")
        ->required();
    compute->add_option("--format", compute_format, "csv (default) or plain")
        ->check(CLI::IsMember({"csv", "plain"}));
    compute->add_option("--output", compute_output, "write to this file instead of stdout");
    add_search_flags(compute, compute_search);

    std::string sweep_state, sweep_q, sweep_output;
    SearchConfig sweep_search;
    CLI::App* sweep = app.add_subcommand("sweep", "CSV of D_q and its bound across q values");
    sweep->add_option("--state", sweep_state, kStateHelp)->required();
    sweep->add_option("--q", sweep_q, "q list: comma entries, each a value or lo:hi:count")
        ->required();
    sweep->add_option("--output", sweep_output, "write to this file instead of stdout");
    add_search_flags(sweep, sweep_search);

    ParametricRequest par;
    std::string par_q, par_output;
    CLI::App* parametric = app.add_subcommand(
        "parametric", "CSV of (excess work D_1, D_q ...) along a one-parameter state family");
    parametric->add_option("--family", par.family, "werner (v in [0,1]) or uv (v in [0,u+2/3])")
        ->required()
        ->check(CLI::IsMember({"werner", "uv"}));
    parametric->add_option("--u", par.u, "uv family parameter, in [0, 0.4] (default 1/3)");
    parametric->add_option("--samples", par.samples, "v samples (default 200)");
    parametric->add_option("--q", par_q, "q list; default is the ladder 1,1.5,2,...,11");
    parametric->add_option("--output", par_output, "write to this file instead of stdout");

    VerifyRequest ver;
    std::string verify_output;
    CLI::App* verify = app.add_subcommand(
        "verify", "run the identity/property check suite; exit 1 if any check fails");
    verify->add_option("--seed", ver.options.seed, "corpus seed (default 42)");
    verify->add_option("--states", ver.options.state_count, "corpus size, >= 10 (default 200)");
    verify->add_option("--output", verify_output, "write the report to this file");
    verify->add_flag("--inject-channel-fault", ver.options.inject_channel_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        OutputTarget target;
        if (compute->parsed()) {
            target.open(compute_output);
            const ComputeRequest req{
                parse_state_spec(compute_state), parse_q_list(compute_q),
                compute_format == "plain" ? OutputFormat::plain : OutputFormat::csv,
                compute_search};
            return cmd_compute(req, *target.stream);
        }
        if (sweep->parsed()) {
            target.open(sweep_output);
            const SweepRequest req{parse_state_spec(sweep_state), parse_q_list(sweep_q),
                                   sweep_search};
            return cmd_sweep(req, *target.stream);
        }
        if (parametric->parsed()) {
            target.open(par_output);
            if (!par_q.empty()) par.q_list = parse_q_list(par_q);
            return cmd_parametric(par, *target.stream);
        }
        target.open(verify_output);
        return cmd_verify(ver, *target.stream);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
