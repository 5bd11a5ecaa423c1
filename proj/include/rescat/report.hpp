#pragma once

#include "rescat/dimension_calculus.hpp"
#include "rescat/quadric_spinor.hpp"

#include <json.hpp>

namespace rescat {

using json = nlohmann::json;

// Per-entry report: exact dimension data plus (when the lattice is small
// enough to build) the identity verification battery.  All rationals are
// serialized as exact "p/q" strings.
json entry_report(const CompleteIntersection& X, long long max_lattice_weight = 10);

json verification_json(const VerificationReport& rep);

// Sweeps used by `rescat verify`; deterministic ordering.
struct SweepResult {
    json details;
    bool all_pass = true;
    std::string first_failure;
};
SweepResult sweep_ci_identities(int max_n, int max_k);
SweepResult sweep_quadric_divisors(int max_n);
SweepResult sweep_refined(int max_n);

// Static catalog of homogeneous varieties with simple residual categories
// (marked non-computed).
json catalog_table();

} // namespace rescat
