#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srp/errors.hpp"

namespace srp::verify {

/// One verified quantity. `pass` is observed-vs-expected under `tolerance`
/// unless `kind` says the observation must exceed the expectation.
struct CheckResult {
    std::string test_name;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<CheckResult> checks;
    bool overall = false;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5250u;

/// Runs the whole cross-validation suite: the dark-state sweep, dispersion
/// law, population zeros, scattering baselines, transfer-vs-shooting
/// equivalence on seeded random draws, qualitative impurity trends,
/// symmetries, the dressed state and determinism. Criteria group as
/// "criterion_NN/...". Deterministic for a fixed seed.
Report run(std::uint64_t seed = kDefaultSeed);

/// JSON array of {test_name, observed, expected, tolerance, pass} plus the
/// overall flag and seed; contains no timestamps, so repeated runs are
/// byte-identical. Throws EmptySuite on an empty report.
std::string to_json(const Report& report);

}  // namespace srp::verify
