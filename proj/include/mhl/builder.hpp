#pragma once

#include <functional>
#include <optional>

#include "mhl/curve.hpp"

namespace mhl {

/// Constants of the integral construction
///   alpha(s) = b * Int_{s_origin}^{s} factor(u) gamma(u) du + a.
/// b1 shifts and b2 > 0 scales the integrating factor. When s_origin is not
/// set it resolves to 0 if the grid contains 0, else to the grid start.
struct ConstructionParams {
    double b = 2.0;
    Vec3 a{0.0, 0.0, 0.0};
    std::optional<double> s_origin;
    double b1 = 0.0;
    double b2 = 1.0;
};

enum class KFamily { Tanh, Tan, Zero, Custom };

/// Log-derivative profile k(s) of the integrating factor. The closed
/// families pair with factors
///   Tanh -> b2 cosh(k_g (s - b1))
///   Tan  -> b2 cos(k_g (s - b1))
///   Zero -> b2
/// Custom integrates `custom_k` numerically unless `closed_factor` supplies
/// e^{Int k} directly.
struct KProfile {
    KFamily family = KFamily::Zero;
    double k_g = 0.0;
    std::function<double(double)> custom_k;
    std::function<double(double)> closed_factor;
};

/// Factor value at s (includes the b2 amplitude). Tan throws PoleProximity
/// within 0.05 rad of a cosine zero.
double integrating_factor(const KProfile& profile,
                          const ConstructionParams& params, double s);

/// k(s) and k'(s) for the profile; Custom k' uses a central stencil.
double profile_k(const KProfile& profile, const ConstructionParams& params,
                 double s);
double profile_k_prime(const KProfile& profile,
                       const ConstructionParams& params, double s);

/// Largest interval around b1 on which a Tan profile stays clear of its
/// factor zeros.
std::pair<double, double> tan_profile_domain(double k_g, double b1);

/// Build alpha over the grid. Positions come from cumulative Simpson
/// quadrature (internally refined to a step <= 1e-3); derivatives 1..3 use
/// the closed product forms through the generator's derivatives. Requires
/// grid step <= 1e-2 and a generator that passes
/// validate_unit_speed_spherical on the grid.
CurvePtr construct_alpha(const CurvePtr& gamma, const KProfile& profile,
                         const ConstructionParams& params,
                         const SampleGrid& grid);

/// Invariants the construction prescribes: kappa = 1/(b F), tau = k_g/(b F),
/// nu = b F. Requires b > 0 and b F > 0.
struct InvariantTriple {
    double kappa, tau, nu;
};
InvariantTriple predicted_invariants(const KProfile& profile,
                                     const std::function<double(double)>& k_g,
                                     const ConstructionParams& params, double s);

enum class KgBranch { Plus, Minus };

/// Geodesic curvature family with k_g^2 = u^2/(1 +- u^2), u = m s + n.
/// The Minus branch requires |u| < 1 - 1e-6.
struct KgProfile {
    double m = 0.0;
    double n = 0.0;
    KgBranch branch = KgBranch::Plus;
    int sign = +1;

    double u(double s) const { return m * s + n; }
};

double kg_slant_profile(const KgProfile& profile, double s);

} // namespace mhl
