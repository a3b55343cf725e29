#pragma once

#include <vector>

#include "mhl/curve.hpp"
#include "mhl/report.hpp"

namespace mhl {

/// Least-squares center/radius of a Lorentzian sphere
/// <p - center, p - center> = signed_r2 (negative for hyperbolic spheres).
struct SphereFit {
    Vec3 center;
    double signed_r2 = 0.0;
    double rms_residual = 0.0;
};

/// 1e-6 for analytic derivative chains, 1e-3 for integrated or interpolated
/// ones.
double default_tolerance(const Curve& curve);

/// Constancy of tau/kappa over the grid. tol <= 0 selects the curve's
/// default tier. Throws InsufficientSamples when the frame fails on more
/// than 20% of the nodes.
VerificationReport ratio_constancy(const Curve& curve, const SampleGrid& grid,
                                   double tol = 0.0);

/// Slant invariant at one node:
///   kappa^2 (tau/kappa)' / (nu |tau^2 - kappa^2|^{3/2})   (systems 1, 2)
///   kappa^2 (tau/kappa)' / (nu (tau^2 + kappa^2)^{3/2})   (system 3)
/// The ratio derivative is a 5-point stencil in the native parameter.
/// Throws DegenerateBranch when |tau^2 - kappa^2| <= 1e-9 kappa^2.
double slant_sigma(const Curve& curve, double s);

VerificationReport slant_verdict(const Curve& curve, const SampleGrid& grid,
                                 double tol = 0.0);

/// Squared-radius invariant at one node; sign tells the sphere type
/// (positive Lorentzian, negative hyperbolic):
///   system 1:  1/kappa^2 + w^2
///   system 2:  1/kappa^2 - w^2
///   system 3: -1/kappa^2 + w^2
/// with w = (1/kappa)' / (nu tau). Throws VanishingTorsion when
/// |tau| <= 1e-9 max(1, kappa).
double sphericity_value(const Curve& curve, double s);

/// Constancy of sphericity_value cross-checked against fit_lorentz_sphere:
/// PASS needs spread <= tol, |signed_r2 - mean| <= 10 tol and
/// rms_residual <= tol.
VerificationReport spherical_verdict(const Curve& curve,
                                     const SampleGrid& grid, double tol = 0.0);

/// Algebraic sphere fit from at least 8 samples via the linear system
/// 2<p,c> - d = <p,p>; signed_r2 = <c,c> - d. Throws SingularSystem on a
/// degenerate feature matrix.
SphereFit fit_lorentz_sphere(const std::vector<Vec3>& points);

/// End-to-end checks of the six construction claims.
struct TheoremParams {
    std::string generator; // catalog name for 1..3; ignored for 4..6
    double b = 2.0;
    double b1 = 0.0;
    double b2 = 1.0;
    Vec3 a{0.0, 0.0, 0.0};
    double kg = 0.0;  // constant geodesic curvature, theorems 1..3
    double m = 0.0;   // slant constants, theorems 4..6
    double n = 0.0;
    int sign = +1;
    SampleGrid grid{-1.0, 1.0, 1001};
    double rk_step = 1e-3;
    double tol = 0.0; // <= 0: curve's default tier
};

TheoremParams default_theorem_params(int id);
VerificationReport verify_theorem(int id, const TheoremParams& params);
VerificationReport verify_theorem(int id);

} // namespace mhl
