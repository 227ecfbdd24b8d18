// verify.hpp — the self-check suite: measurement-channel identities,
// entropy decomposition laws, and the deviation-measure properties, evaluated
// on a seeded random corpus with worst-case residual reporting
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdiscord/types.hpp"

namespace qdiscord {

struct VerifyOptions {
    std::uint64_t seed = 42;
    Index state_count = 200;  // corpus size, >= 10 (cycles 2x2, 2x3 and 3x3 shapes)
    // Test hook: perturbs the measured state inside the self-adjointness
    // check so the failure path (exit code, [FAIL] line) can be exercised.
    bool inject_channel_fault = false;
};

struct CheckResult {
    std::string name;
    bool passed;
    double worst;      // worst residual (equality checks) or signed violation (inequalities)
    double tolerance;
    std::string detail;
};

// Runs every check on a corpus derived deterministically from the options.
// Single-threaded on purpose: residual reductions happen in a fixed order, so
// equal options give bit-identical results.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

// Fixed-format report (no timing, stable ordering): byte-identical for equal
// options. Returns true iff every check passed.
bool write_verification_report(const std::vector<CheckResult>& checks, const VerifyOptions& opts,
                               std::ostream& out);

}  // namespace qdiscord
