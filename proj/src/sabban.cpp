#include "mhl/sabban.hpp"

#include <cmath>
#include <algorithm>

#include "mhl/numerics.hpp"

namespace mhl {

SurfaceKind surface_membership(const Vec3& p, double tol) {
    if (!p.finite() || !std::isfinite(tol))
        throw DomainError("surface_membership: non-finite input");
    const double q = p.x1 * p.x1 + p.x2 * p.x2 - p.x3 * p.x3;
    if (std::fabs(q - 1.0) <= tol) return SurfaceKind::S12;
    if (std::fabs(q + 1.0) <= tol) return SurfaceKind::H02;
    return SurfaceKind::Neither;
}

VerificationReport validate_unit_speed_spherical(const Curve& gamma,
                                                 const SampleGrid& grid,
                                                 double tol) {
    grid.validate();
    if (!(tol > 0.0))
        throw DomainError("validate_unit_speed_spherical: tol must be positive");
    const double member_tol = std::max(1e-8, tol);

    VerificationReport rep;
    rep.subject = gamma.name();
    rep.grid = grid;
    rep.metric_name = "unit_speed_deviation";
    rep.values.reserve(grid.count);

    SurfaceKind common = SurfaceKind::Neither;
    bool consistent = true;
    double worst_speed = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        const double s = grid.node(i);
        const SurfaceKind k = surface_membership(gamma.eval(s, 0), member_tol);
        if (i == 0)
            common = k;
        else if (k != common)
            consistent = false;
        const double dev = pseudo_norm(gamma.eval(s, 1)) - 1.0;
        worst_speed = std::max(worst_speed, std::fabs(dev));
        rep.values.push_back(dev);
    }

    double lo = rep.values.front(), hi = rep.values.front(), sum = 0.0;
    for (double v : rep.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    rep.mean = sum / rep.values.size();
    rep.spread = (hi - lo) / std::max(1.0, std::fabs(rep.mean));

    const bool on_surface = consistent && common != SurfaceKind::Neither;
    rep.pass = on_surface && worst_speed <= tol;
    if (!rep.pass)
        rep.cause = !on_surface ? "off_surface" : "not_unit_speed";
    rep.details = std::string("surface=") +
                  to_string(consistent ? common : SurfaceKind::Neither);
    return rep;
}

SabbanFrame sabban_frame(const Curve& gamma, double s) {
    SabbanFrame f;
    f.gamma = gamma.eval(s, 0);
    f.surface = surface_membership(f.gamma, 1e-6);
    if (f.surface == SurfaceKind::Neither)
        throw NotSpherical(gamma.name() + ": point off S12/H02");
    f.t = gamma.eval(s, 1);
    if (std::fabs(minkowski_dot(f.t, f.t)) <= default_causal_tol(f.t))
        throw LightlikeTangent(gamma.name() + ": lightlike tangent");
    f.tangent_character = causal_character(f.t);
    f.p = lorentz_cross(f.gamma, f.t);
    f.k_g = det3(f.gamma, f.t, gamma.eval(s, 2));
    return f;
}

namespace {

struct SystemSigns {
    // t' = tp_p * kg * p + tp_g * gamma ; p' = pp * kg * t
    double tp_p, tp_g, pp;
};

SystemSigns system_signs(SurfaceKind surface, CausalCharacter ch) {
    if (surface == SurfaceKind::S12 && ch == CausalCharacter::Timelike)
        return {+1.0, +1.0, +1.0};
    if (surface == SurfaceKind::S12 && ch == CausalCharacter::Spacelike)
        return {-1.0, -1.0, -1.0};
    if (surface == SurfaceKind::H02 && ch == CausalCharacter::Spacelike)
        return {+1.0, +1.0, -1.0};
    throw UnsupportedCase("no frame system for this (surface, character) pair");
}

} // namespace

double sabban_ode_residual(const Curve& gamma, double s, double h) {
    if (!(h > 0.0))
        throw DomainError("sabban_ode_residual: step must be positive");
    const SabbanFrame lo = sabban_frame(gamma, s - h);
    const SabbanFrame mid = sabban_frame(gamma, s);
    const SabbanFrame hi = sabban_frame(gamma, s + h);
    const SystemSigns sg = system_signs(mid.surface, mid.tangent_character);

    const Vec3 rows[3] = {
        (0.5 / h) * (hi.gamma - lo.gamma) - mid.t,
        (0.5 / h) * (hi.t - lo.t) -
            (sg.tp_p * mid.k_g * mid.p + sg.tp_g * mid.gamma),
        (0.5 / h) * (hi.p - lo.p) - sg.pp * mid.k_g * mid.t,
    };
    double worst = 0.0;
    for (const Vec3& r : rows) worst = std::max(worst, euclid_norm(r));
    return worst;
}

SynthesizedCurve::SynthesizedCurve(SurfaceKind surface, CausalCharacter ch,
                                   std::function<double(double)> kg, double s0,
                                   double s1)
    : Curve(std::string("synth:") + to_string(surface) + "/" + to_string(ch),
            s0, s1, DerivativeQuality::Spline),
      surface_(surface), char_(ch), kg_(std::move(kg)) {}

SynthesizedCurve::Frame SynthesizedCurve::rhs(double s, const Frame& f) const {
    const SystemSigns sg = system_signs(surface_, char_);
    const double k = kg_(s);
    return {f.t, sg.tp_p * k * f.p + sg.tp_g * f.g, sg.pp * k * f.t};
}

SynthesizedCurve::Frame SynthesizedCurve::rk4_step(double s, const Frame& f,
                                                   double dt) const {
    auto fma_frame = [](const Frame& a, double c, const Frame& b) {
        return Frame{a.g + c * b.g, a.t + c * b.t, a.p + c * b.p};
    };
    const Frame k1 = rhs(s, f);
    const Frame k2 = rhs(s + dt / 2, fma_frame(f, dt / 2, k1));
    const Frame k3 = rhs(s + dt / 2, fma_frame(f, dt / 2, k2));
    const Frame k4 = rhs(s + dt, fma_frame(f, dt, k3));
    Frame out = f;
    out.g += dt / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
    out.t += dt / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
    out.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    return out;
}

SynthesizedCurve::Frame SynthesizedCurve::frame_at(double s) const {
    // Nearest stored node, then one partial step; keeps evaluation at the
    // integrator's own accuracy anywhere in the domain.
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s);
    std::size_t i = it - nodes_.begin();
    if (i == nodes_.size()) --i;
    if (i > 0 && s - nodes_[i - 1] < nodes_[i] - s) --i;
    const double dt = s - nodes_[i];
    if (dt == 0.0) return frames_[i];
    return rk4_step(nodes_[i], frames_[i], dt);
}

Vec3 SynthesizedCurve::eval_impl(double s, int order) const {
    const Frame f = frame_at(s);
    if (order == 0) return f.g;
    if (order == 1) return f.t;
    const SystemSigns sg = system_signs(surface_, char_);
    const double k = kg_(s);
    if (order == 2) return sg.tp_p * k * f.p + sg.tp_g * f.g;
    // t'' = tp_p*(kg' p + kg p') + tp_g * t with p' = pp * kg * t
    const double kp = d1_5point(kg_, s, 1e-5);
    return sg.tp_p * kp * f.p +
           (sg.tp_p * sg.pp * k * k + sg.tp_g) * f.t;
}

std::shared_ptr<const SynthesizedCurve> synthesize_spherical_curve(
    SurfaceKind surface, CausalCharacter tangent_character,
    std::function<double(double)> k_g, std::optional<SynthesisInit> init,
    const SampleGrid& grid, double step) {
    grid.validate();
    if (!(step > 0.0) || step > grid.s1 - grid.s0)
        throw DomainError("synthesize_spherical_curve: bad step");
    if (tangent_character == CausalCharacter::Lightlike)
        throw UnsupportedCase("synthesize_spherical_curve: lightlike tangent");
    system_signs(surface, tangent_character); // rejects (H02, timelike)

    SynthesisInit start;
    if (init) {
        start = *init;
    } else if (surface == SurfaceKind::S12 &&
               tangent_character == CausalCharacter::Spacelike) {
        start = {{1, 0, 0}, {0, 1, 0}};
    } else if (surface == SurfaceKind::S12) {
        start = {{1, 0, 0}, {0, 0, 1}};
    } else {
        start = {{0, 0, 1}, {1, 0, 0}};
    }

    const double gg = surface == SurfaceKind::S12 ? 1.0 : -1.0;
    const double tt =
        tangent_character == CausalCharacter::Spacelike ? 1.0 : -1.0;
    if (!start.gamma.finite() || !start.t.finite() ||
        std::fabs(minkowski_dot(start.gamma, start.gamma) - gg) > 1e-9 ||
        std::fabs(minkowski_dot(start.t, start.t) - tt) > 1e-9 ||
        std::fabs(minkowski_dot(start.gamma, start.t)) > 1e-9)
        throw BadInitialFrame(
            "synthesize_spherical_curve: initial frame violates the Gram "
            "constraints for this case");

    auto curve = std::shared_ptr<SynthesizedCurve>(new SynthesizedCurve(
        surface, tangent_character, std::move(k_g), grid.s0, grid.s1));

    const double anchor =
        (grid.s0 <= 0.0 && 0.0 <= grid.s1) ? 0.0 : grid.s0;
    SynthesizedCurve::Frame f0{start.gamma, start.t,
                               lorentz_cross(start.gamma, start.t)};

    std::vector<double> up_s{anchor};
    std::vector<SynthesizedCurve::Frame> up_f{f0};
    for (double s = anchor; s < grid.s1 - 1e-15;) {
        const double dt = std::min(step, grid.s1 - s);
        up_f.push_back(curve->rk4_step(s, up_f.back(), dt));
        s += dt;
        up_s.push_back(s);
    }
    std::vector<double> down_s;
    std::vector<SynthesizedCurve::Frame> down_f;
    {
        double s = anchor;
        SynthesizedCurve::Frame f = f0;
        while (s > grid.s0 + 1e-15) {
            const double dt = -std::min(step, s - grid.s0);
            f = curve->rk4_step(s, f, dt);
            s += dt;
            down_s.push_back(s);
            down_f.push_back(f);
        }
    }
    curve->nodes_.assign(down_s.rbegin(), down_s.rend());
    curve->frames_.assign(down_f.rbegin(), down_f.rend());
    curve->nodes_.insert(curve->nodes_.end(), up_s.begin(), up_s.end());
    curve->frames_.insert(curve->frames_.end(), up_f.begin(), up_f.end());
    return curve;
}

} // namespace mhl
