#pragma once

#include <cstdint>

#include "ffr/field.hpp"
#include "ffr/json_io.hpp"

namespace ffr {

struct SuiteResult {
    json report;
    bool pass = true;
};

struct SuiteCaps {
    double validator_cap = 4.0;  // stein-tomas measured-constant cap
    double regular_cap = 8.0;    // regular L2 chain cap
};

// Per-field validator battery: transform identities, surface facts, the
// quadruple/incidence reductions, the inequality validators, and the exact
// exponent arithmetic.  Sizes adapt to q so the suite stays interactive.
SuiteResult run_core_suite(const Field& f, std::uint64_t seed, int threads,
                           const SuiteCaps& caps = {});

// Exact-fraction identities alone (field independent).
SuiteResult run_exponent_suite();

}  // namespace ffr
