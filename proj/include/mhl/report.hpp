#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhl/grid.hpp"

namespace mhl {

/// Outcome of sampling a scalar invariant over a grid and judging its
/// constancy. `values` holds the metric at the non-excluded nodes in grid
/// order; `spread` is (max - min) / max(1, |mean|).
struct VerificationReport {
    std::string subject;
    SampleGrid grid;
    std::string metric_name;
    std::vector<double> values;
    double mean = 0.0;
    double spread = 0.0;
    int excluded_nodes = 0;
    bool pass = false;
    std::string cause;   // short machine-ish reason when pass == false
    std::string details; // free-form extras (fit results, sub-checks, ...)
    std::optional<int> theorem;

    const char* verdict() const { return pass ? "PASS" : "FAIL"; }
};

} // namespace mhl
