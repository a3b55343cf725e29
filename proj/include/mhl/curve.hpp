#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mhl/grid.hpp"
#include "mhl/lorentz.hpp"

namespace mhl {

enum class DerivativeQuality { Analytic, FiniteDifference, Spline };

inline const char* to_string(DerivativeQuality q) {
    switch (q) {
        case DerivativeQuality::Analytic: return "analytic";
        case DerivativeQuality::FiniteDifference: return "finite-difference";
        default: return "spline";
    }
}

/// A parametrized curve s -> R^3 with derivatives up to order 3 on a closed
/// interval. Evaluation outside the domain or above order 3 throws.
class Curve {
public:
    virtual ~Curve() = default;

    /// order 0..3; throws OrderError / DomainError.
    Vec3 eval(double s, int order) const;

    const std::string& name() const { return name_; }
    DerivativeQuality quality() const { return quality_; }
    double s_min() const { return s0_; }
    double s_max() const { return s1_; }

    /// Step detectors should use when finite-differencing quantities derived
    /// from this curve. Tabulated curves widen it so difference stencils
    /// average over several spline intervals.
    virtual double fd_step_hint(double s) const;

protected:
    Curve(std::string name, double s0, double s1, DerivativeQuality q);
    virtual Vec3 eval_impl(double s, int order) const = 0;

private:
    std::string name_;
    double s0_, s1_;
    DerivativeQuality quality_;
};

using CurvePtr = std::shared_ptr<const Curve>;

/// Wrap a closed-form evaluator f(s, order). The callable must handle orders
/// 0..3 on [s0, s1].
CurvePtr analytic_curve(std::string name, std::function<Vec3(double, int)> f,
                        double s0, double s1);

/// Wrap a position-only callable; derivatives come from central differences
/// (5-point, Richardson on order 1). The stated domain shrinks by four
/// order-3 steps at each end so every stencil stays inside [s0, s1].
CurvePtr finite_difference_curve(std::string name,
                                 std::function<Vec3(double)> position,
                                 double s0, double s1);

/// Catalog lookup; throws UnknownCurve for names outside the catalog.
/// `params` is accepted for interface stability; catalog entries take no
/// free constants today.
CurvePtr builtin_curve(const std::string& name,
                       const std::map<std::string, double>& params = {});

/// Names served by builtin_curve, in catalog order.
const std::vector<std::string>& builtin_curve_names();

/// Not-a-knot cubic spline through (grid[i], points[i]). Requires at least
/// 8 strictly increasing nodes; order-3 derivatives are piecewise constant.
CurvePtr tabulated_curve(const std::vector<double>& grid,
                         const std::vector<Vec3>& points);

} // namespace mhl
