#pragma once

#include "mhl/curve.hpp"
#include "mhl/lorentz.hpp"

namespace mhl {

/// Frame and scalar invariants of a non-lightlike curve at one parameter
/// value. kappa >= 0 and nu > 0; tau keeps its sign. `system` is 1, 2 or 3:
///   1  timelike curve
///   2  spacelike curve, spacelike normal
///   3  spacelike curve, timelike normal
struct FrenetApparatus {
    Vec3 T, N, B;
    double kappa = 0.0;
    double tau = 0.0;
    double nu = 0.0;
    CausalCharacter curve_character = CausalCharacter::Spacelike;
    CausalCharacter normal_character = CausalCharacter::Spacelike;
    int system = 2;
};

/// Build the apparatus from derivatives 1..3 at s. Throws LightlikeTangent
/// when <a',a'> is within tolerance of zero and VanishingCurvature when
/// ||a' ^ a''|| <= 1e-9 * nu^3.
FrenetApparatus frenet_apparatus(const Curve& curve, double s);

/// Max row deviation (Euclidean) between the centered difference of the
/// frame and the governing first-order system at s.
double frame_ode_residual(const Curve& curve, double s, double h = 1e-4);

} // namespace mhl
