#include "mhl/frenet.hpp"

#include <cmath>

namespace mhl {

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Coefficient of T in the N' row of the governing system.
double t_coefficient(int system, double kappa_nu) {
    return system == 2 ? -kappa_nu : kappa_nu;
}

// Coefficient of N in the B' row.
double b_row_coefficient(int system, double tau_nu) {
    return system == 1 ? -tau_nu : tau_nu;
}

} // namespace

FrenetApparatus frenet_apparatus(const Curve& curve, double s) {
    const Vec3 d1 = curve.eval(s, 1);
    const Vec3 d2 = curve.eval(s, 2);
    const Vec3 d3 = curve.eval(s, 3);
    if (!d1.finite() || !d2.finite() || !d3.finite())
        throw DomainError(curve.name() + ": non-finite derivatives");

    const double g = minkowski_dot(d1, d1);
    if (std::fabs(g) <= default_causal_tol(d1))
        throw LightlikeTangent(curve.name() + ": lightlike tangent");
    const double eps1 = sign_of(g);
    const double nu = std::sqrt(std::fabs(g));

    const Vec3 cr = lorentz_cross(d1, d2);
    const double crg = minkowski_dot(cr, cr);
    const double cr_norm = std::sqrt(std::fabs(crg));
    if (cr_norm <= 1e-9 * nu * nu * nu)
        throw VanishingCurvature(curve.name() + ": curvature below threshold");

    FrenetApparatus fr;
    fr.nu = nu;
    fr.kappa = cr_norm / (nu * nu * nu);
    fr.tau = det3(d1, d2, d3) / std::fabs(crg);
    fr.curve_character =
        eps1 > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;

    fr.T = d1 / nu;
    // T' from the chain rule; nu' = eps1 <a',a''> / nu.
    const double nu_p = eps1 * minkowski_dot(d1, d2) / nu;
    const Vec3 Tp = d2 / nu - (nu_p / (nu * nu)) * d1;
    const double w = pseudo_norm(Tp); // equals kappa * nu
    fr.N = Tp / w;
    fr.normal_character = causal_character(fr.N);
    if (fr.normal_character == CausalCharacter::Lightlike)
        throw VanishingCurvature(curve.name() + ": degenerate normal");

    if (fr.curve_character == CausalCharacter::Timelike)
        fr.system = 1;
    else
        fr.system = fr.normal_character == CausalCharacter::Spacelike ? 2 : 3;

    Vec3 B0 = lorentz_cross(fr.T, fr.N);
    B0 = B0 / pseudo_norm(B0);

    // Orient B so the N' row of the governing system holds. N' comes from
    // exact second differentiation of T = a'/nu, no stencils involved.
    const double nu_pp =
        (eps1 * (minkowski_dot(d2, d2) + minkowski_dot(d1, d3)) - nu_p * nu_p) / nu;
    const Vec3 Tpp = d3 / nu - (2.0 * nu_p / (nu * nu)) * d2 +
                     (2.0 * nu_p * nu_p / (nu * nu * nu) - nu_pp / (nu * nu)) * d1;
    const double w_p = sign_of(minkowski_dot(Tp, Tp)) * minkowski_dot(Tp, Tpp) / w;
    const Vec3 Np = Tpp / w - (w_p / (w * w)) * Tp;

    const double cT = t_coefficient(fr.system, fr.kappa * fr.nu);
    const double tn = fr.tau * fr.nu;
    const double r_plus = euclid_norm(Np - (cT * fr.T + tn * B0));
    const double r_minus = euclid_norm(Np - (cT * fr.T - tn * B0));
    fr.B = r_plus <= r_minus ? B0 : -B0;
    return fr;
}

double frame_ode_residual(const Curve& curve, double s, double h) {
    if (!(h > 0.0))
        throw DomainError("frame_ode_residual: step must be positive");
    const FrenetApparatus lo = frenet_apparatus(curve, s - h);
    const FrenetApparatus mid = frenet_apparatus(curve, s);
    const FrenetApparatus hi = frenet_apparatus(curve, s + h);

    const double kn = mid.kappa * mid.nu;
    const double tn = mid.tau * mid.nu;
    const Vec3 rows[3] = {
        (0.5 / h) * (hi.T - lo.T) - kn * mid.N,
        (0.5 / h) * (hi.N - lo.N) -
            (t_coefficient(mid.system, kn) * mid.T + tn * mid.B),
        (0.5 / h) * (hi.B - lo.B) - b_row_coefficient(mid.system, tn) * mid.N,
    };
    double worst = 0.0;
    for (const Vec3& r : rows) worst = std::max(worst, euclid_norm(r));
    return worst;
}

} // namespace mhl
