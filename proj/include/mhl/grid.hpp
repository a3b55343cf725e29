#pragma once

#include <string>

#include "mhl/errors.hpp"

namespace mhl {

/// Uniform sampling grid: count nodes from s0 to s1 inclusive.
struct SampleGrid {
    double s0 = -1.0;
    double s1 = 1.0;
    int count = 201;

    void validate() const {
        if (!(s0 < s1))
            throw DomainError("SampleGrid: require s0 < s1");
        if (count < 2)
            throw DomainError("SampleGrid: require count >= 2");
    }

    double step() const { return (s1 - s0) / (count - 1); }

    double node(int i) const {
        if (i == count - 1) return s1;
        return s0 + i * step();
    }
};

} // namespace mhl
