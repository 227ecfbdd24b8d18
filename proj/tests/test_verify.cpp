#include "qdiscord/verify.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

using namespace qdiscord;

namespace {

VerifyOptions small_options() {
    VerifyOptions opts;
    opts.seed = 7;
    opts.state_count = 20;
    return opts;
}

}  // namespace

TEST_CASE("all checks pass on a fresh corpus") {
    const std::vector<CheckResult> checks = run_verification(small_options());
    REQUIRE_FALSE(checks.empty());
    for (const CheckResult& c : checks) {
        INFO(c.name, ": worst ", c.worst, " vs tol ", c.tolerance);
        CHECK(c.passed);
        CHECK(c.worst <= c.tolerance);
        CHECK(c.tolerance > 0.0);
        CHECK_FALSE(c.name.empty());
        CHECK_FALSE(c.detail.empty());
    }
}

TEST_CASE("the expected checks run in a stable order") {
    const std::vector<CheckResult> checks = run_verification(small_options());
    const std::vector<std::string> expected = {
        "channel-idempotence",
        "channel-selfadjoint-trace",
        "measured-power-decomposition",
        "block-power-partial-trace",
        "marginal-probability-powers",
        "joint-entropy-additivity",
        "pure-measured-entropy-bound",
        "conditional-average-law",
        "entropy-nondecrease-pointwise",
        "klein-bound-pointwise",
        "optimized-nonnegativity",
        "optimized-bound-ordering",
        "product-state-zero",
        "local-unitary-invariance",
        "mixing-continuity",
    };
    REQUIRE(checks.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(checks[i].name == expected[i]);
}

TEST_CASE("reports are deterministic") {
    const VerifyOptions opts = small_options();
    std::ostringstream first, second;
    CHECK(write_verification_report(run_verification(opts), opts, first));
    CHECK(write_verification_report(run_verification(opts), opts, second));
    CHECK(first.str() == second.str());
    CHECK(first.str().find("[PASS]") != std::string::npos);
    CHECK(first.str().find("summary:") != std::string::npos);
    CHECK(first.str().find("seed 7") != std::string::npos);
}

TEST_CASE("seed changes the corpus but not the verdict") {
    VerifyOptions opts = small_options();
    opts.seed = 8;
    std::ostringstream report;
    CHECK(write_verification_report(run_verification(opts), opts, report));
    CHECK(report.str() != std::string());
}

TEST_CASE("the fault hook trips exactly the targeted check") {
    VerifyOptions opts = small_options();
    opts.inject_channel_fault = true;
    const std::vector<CheckResult> checks = run_verification(opts);
    bool fault_seen = false;
    for (const CheckResult& c : checks) {
        if (c.name == "channel-selfadjoint-trace") {
            CHECK_FALSE(c.passed);
            fault_seen = true;
        }
    }
    CHECK(fault_seen);
    std::ostringstream report;
    CHECK_FALSE(write_verification_report(checks, opts, report));
    CHECK(report.str().find("[FAIL] channel-selfadjoint-trace") != std::string::npos);
    CHECK(report.str().find("channel fault injected") != std::string::npos);
}

TEST_CASE("tiny corpora are rejected") {
    VerifyOptions opts;
    opts.state_count = 5;
    CHECK_THROWS_AS(run_verification(opts), std::invalid_argument);
}
