#pragma once

#include <cmath>
#include <vector>
#include <algorithm>

#include "mhl/errors.hpp"

namespace mhl {

// Shared finite-difference and quadrature kernels. Value type V is double or
// Vec3 (anything with +, -, scalar *).

inline double fd_step_12(double s) { return std::max(1e-5, 1e-5 * std::fabs(s)); }
inline double fd_step_3(double s) { return std::max(1e-4, 1e-4 * std::fabs(s)); }

/// 5-point central first derivative, O(h^4).
template <class F>
auto d1_5point(F&& f, double s, double h) {
    return (1.0 / (12.0 * h)) *
           (f(s - 2 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2 * h));
}

/// One Richardson level on top of the 5-point stencil, O(h^6)-ish.
template <class F>
auto d1_richardson(F&& f, double s, double h) {
    auto coarse = d1_5point(f, s, h);
    auto fine = d1_5point(f, s, h / 2.0);
    return (1.0 / 15.0) * (16.0 * fine - coarse);
}

/// 5-point central second derivative, O(h^4).
template <class F>
auto d2_5point(F&& f, double s, double h) {
    return (1.0 / (12.0 * h * h)) *
           (-1.0 * f(s - 2 * h) + 16.0 * f(s - h) - 30.0 * f(s) +
            16.0 * f(s + h) - 1.0 * f(s + 2 * h));
}

/// 5-point central third derivative, O(h^2).
template <class F>
auto d3_5point(F&& f, double s, double h) {
    return (1.0 / (2.0 * h * h * h)) *
           (-1.0 * f(s - 2 * h) + 2.0 * f(s - h) - 2.0 * f(s + h) +
            1.0 * f(s + 2 * h));
}

/// Composite Simpson over [a,b] with `panels` panels; each panel uses its
/// midpoint, so the integrand must be evaluable anywhere in [a,b]. 4th order.
template <class F>
auto simpson(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    auto acc = 0.0 * f(a); // zero of the value type
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == panels) ? b : a + (i + 1) * h;
        acc += (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    }
    return acc;
}

/// Cumulative Simpson along `nodes`: result[i] = integral from nodes[0] to
/// nodes[i], one midpoint panel per interval.
template <class F, class V = decltype(std::declval<F>()(0.0))>
std::vector<V> cumulative_simpson(F&& f, const std::vector<double>& nodes) {
    if (nodes.size() < 2)
        throw DomainError("cumulative_simpson: need at least 2 nodes");
    std::vector<V> out(nodes.size());
    out[0] = 0.0 * f(nodes[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double lo = nodes[i - 1], hi = nodes[i];
        if (!(hi > lo))
            throw DomainError("cumulative_simpson: nodes must increase");
        out[i] = out[i - 1] +
                 (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    }
    return out;
}

} // namespace mhl
