#pragma once

#include <vector>

#include "mhl/errors.hpp"

namespace mhl {

/// Scalar not-a-knot cubic spline. Third derivatives are piecewise constant;
/// they jump at interior knots.
class CubicSpline {
public:
    CubicSpline() = default;
    /// x strictly increasing, x.size() == y.size() >= 4.
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double eval(double s, int order) const; // order 0..3, clamped to end intervals

private:
    std::vector<double> x_, y_, m_; // m_ = second derivatives at knots
};

} // namespace mhl
