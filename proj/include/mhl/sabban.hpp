#pragma once

#include <functional>
#include <optional>

#include "mhl/curve.hpp"
#include "mhl/report.hpp"

namespace mhl {

/// Central quadrics Q(x) = x1^2 + x2^2 - x3^2 = +1 (S12) or -1 (H02).
enum class SurfaceKind { S12, H02, Neither };

inline const char* to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::S12: return "S12";
        case SurfaceKind::H02: return "H02";
        default: return "neither";
    }
}

SurfaceKind surface_membership(const Vec3& p, double tol = 1e-8);

/// Frame carried by a unit-speed curve on S12 or H02: the position, its
/// tangent and p = gamma ^ t, plus the geodesic curvature
/// k_g = det(gamma, t, t').
struct SabbanFrame {
    Vec3 gamma, t, p;
    double k_g = 0.0;
    SurfaceKind surface = SurfaceKind::Neither;
    CausalCharacter tangent_character = CausalCharacter::Spacelike;
};

/// PASS iff the curve stays on one surface over the whole grid and
/// | ||gamma'|| - 1 | <= tol at every node. Membership uses
/// max(1e-8, tol) so integrated tracks with small drift still classify.
VerificationReport validate_unit_speed_spherical(const Curve& gamma,
                                                 const SampleGrid& grid,
                                                 double tol);

/// Frame at one parameter value; throws NotSpherical off-surface and
/// LightlikeTangent on a null tangent.
SabbanFrame sabban_frame(const Curve& gamma, double s);

/// Max row deviation between centered differences of (gamma, t, p) and the
/// governing frame system for the curve's (surface, character) case.
double sabban_ode_residual(const Curve& gamma, double s, double h = 1e-4);

/// Starting frame for synthesis; p is always computed as gamma ^ t.
struct SynthesisInit {
    Vec3 gamma, t;
};

class SynthesizedCurve; // defined below

/// Integrate the frame system for the prescribed geodesic curvature with
/// classic fixed-step RK4 and return the position track as a curve. The
/// initial frame sits at s = 0 when 0 is inside the grid, else at s0.
/// Supported cases: (S12, spacelike), (S12, timelike), (H02, spacelike);
/// (H02, timelike) throws UnsupportedCase.
std::shared_ptr<const SynthesizedCurve> synthesize_spherical_curve(
    SurfaceKind surface, CausalCharacter tangent_character,
    std::function<double(double)> k_g, std::optional<SynthesisInit> init,
    const SampleGrid& grid, double step = 1e-3);

/// Curve produced by synthesize_spherical_curve. Derivatives come from the
/// transported frame through the governing system, not from differencing.
class SynthesizedCurve final : public Curve {
public:
    struct Frame {
        Vec3 g, t, p;
    };

    Frame frame_at(double s) const;
    SurfaceKind surface() const { return surface_; }
    CausalCharacter tangent_character() const { return char_; }

private:
    friend std::shared_ptr<const SynthesizedCurve> synthesize_spherical_curve(
        SurfaceKind, CausalCharacter, std::function<double(double)>,
        std::optional<SynthesisInit>, const SampleGrid&, double);

    SynthesizedCurve(SurfaceKind surface, CausalCharacter ch,
                     std::function<double(double)> kg, double s0, double s1);

    Vec3 eval_impl(double s, int order) const override;
    Frame rhs(double s, const Frame& f) const;
    Frame rk4_step(double s, const Frame& f, double dt) const;

    SurfaceKind surface_;
    CausalCharacter char_;
    std::function<double(double)> kg_;
    std::vector<double> nodes_;
    std::vector<Frame> frames_;
};

} // namespace mhl
