#include "mhl/builder.hpp"

#include <algorithm>
#include <cmath>

#include "mhl/numerics.hpp"
#include "mhl/sabban.hpp"

namespace mhl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleMargin = 0.05; // radians kept clear of cos zeros
constexpr double kQuadStep = 1e-3;   // internal Simpson refinement target
constexpr double kCoarseLimit = 1e-2;

void check_tan_argument(double kg, double b1, double s) {
    if (std::fabs(kg * (s - b1)) >= kPi / 2.0 - kPoleMargin)
        throw PoleProximity(
            "tan profile: parameter within the guarded pole margin");
}

void check_profile(const KProfile& p) {
    switch (p.family) {
        case KFamily::Tanh:
        case KFamily::Tan:
            if (!(p.k_g > 0.0))
                throw DomainError("KProfile: closed families need k_g > 0");
            break;
        case KFamily::Custom:
            if (!p.custom_k && !p.closed_factor)
                throw DomainError(
                    "KProfile: custom family needs custom_k or closed_factor");
            break;
        case KFamily::Zero:
            break;
    }
}

void check_params(const ConstructionParams& par) {
    if (par.b == 0.0) throw DomainError("ConstructionParams: b must be nonzero");
    if (!(par.b2 > 0.0)) throw DomainError("ConstructionParams: b2 must be positive");
    if (!std::isfinite(par.b) || !std::isfinite(par.b1) ||
        !std::isfinite(par.b2) || !par.a.finite())
        throw DomainError("ConstructionParams: non-finite constants");
}

double resolve_origin(const ConstructionParams& par, const SampleGrid& grid) {
    if (par.s_origin) {
        if (*par.s_origin < grid.s0 || *par.s_origin > grid.s1)
            throw DomainError("construct_alpha: s_origin outside the grid");
        return *par.s_origin;
    }
    return (grid.s0 <= 0.0 && 0.0 <= grid.s1) ? 0.0 : grid.s0;
}

} // namespace

double integrating_factor(const KProfile& profile,
                          const ConstructionParams& params, double s) {
    check_profile(profile);
    check_params(params);
    const double u = s - params.b1;
    switch (profile.family) {
        case KFamily::Tanh:
            return params.b2 * std::cosh(profile.k_g * u);
        case KFamily::Tan:
            check_tan_argument(profile.k_g, params.b1, s);
            return params.b2 * std::cos(profile.k_g * u);
        case KFamily::Zero:
            return params.b2;
        case KFamily::Custom: {
            if (profile.closed_factor)
                return params.b2 * profile.closed_factor(s);
            const double origin = params.s_origin.value_or(0.0);
            const double lo = std::min(origin, s), hi = std::max(origin, s);
            const int panels =
                std::max(1, int(std::ceil((hi - lo) / kQuadStep)));
            const double integral = simpson(profile.custom_k, origin, s, panels);
            return params.b2 * std::exp(integral);
        }
    }
    throw DomainError("integrating_factor: unknown family");
}

double profile_k(const KProfile& profile, const ConstructionParams& params,
                 double s) {
    check_profile(profile);
    const double u = s - params.b1;
    switch (profile.family) {
        case KFamily::Tanh:
            return profile.k_g * std::tanh(profile.k_g * u);
        case KFamily::Tan:
            check_tan_argument(profile.k_g, params.b1, s);
            return -profile.k_g * std::tan(profile.k_g * u);
        case KFamily::Zero:
            return 0.0;
        case KFamily::Custom:
            if (profile.custom_k) return profile.custom_k(s);
            // Fall back to the log-derivative of the closed factor.
            return d1_5point(profile.closed_factor, s, 1e-5) /
                   profile.closed_factor(s);
    }
    throw DomainError("profile_k: unknown family");
}

double profile_k_prime(const KProfile& profile,
                       const ConstructionParams& params, double s) {
    check_profile(profile);
    const double u = s - params.b1;
    switch (profile.family) {
        case KFamily::Tanh: {
            const double c = std::cosh(profile.k_g * u);
            return profile.k_g * profile.k_g / (c * c);
        }
        case KFamily::Tan: {
            check_tan_argument(profile.k_g, params.b1, s);
            const double c = std::cos(profile.k_g * u);
            return -profile.k_g * profile.k_g / (c * c);
        }
        case KFamily::Zero:
            return 0.0;
        case KFamily::Custom: {
            auto k = [&](double x) { return profile_k(profile, params, x); };
            return d1_5point(k, s, 1e-5);
        }
    }
    throw DomainError("profile_k_prime: unknown family");
}

std::pair<double, double> tan_profile_domain(double k_g, double b1) {
    if (!(k_g > 0.0)) throw DomainError("tan_profile_domain: need k_g > 0");
    const double half = (kPi / 2.0 - kPoleMargin) / k_g;
    return {b1 - half, b1 + half};
}

namespace {

class ConstructedCurve final : public Curve {
public:
    ConstructedCurve(std::string name, CurvePtr gamma, KProfile profile,
                     ConstructionParams params, std::vector<double> nodes,
                     std::vector<Vec3> alpha, std::vector<double> factor,
                     DerivativeQuality q)
        : Curve(std::move(name), nodes.front(), nodes.back(), q),
          gamma_(std::move(gamma)), profile_(std::move(profile)),
          params_(std::move(params)), nodes_(std::move(nodes)),
          alpha_(std::move(alpha)), factor_(std::move(factor)) {}

    double fd_step_hint(double s) const override {
        return std::max(Curve::fd_step_hint(s), gamma_->fd_step_hint(s));
    }

private:
    std::size_t nearest(double s) const {
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s);
        std::size_t i = it - nodes_.begin();
        if (i == nodes_.size()) --i;
        if (i > 0 && s - nodes_[i - 1] < nodes_[i] - s) --i;
        return i;
    }

    double factor_at(double s) const {
        if (profile_.family != KFamily::Custom || profile_.closed_factor)
            return integrating_factor(profile_, params_, s);
        // Chain from the nearest precomputed node to keep this O(1).
        const std::size_t i = nearest(s);
        if (s == nodes_[i]) return factor_[i];
        return factor_[i] *
               std::exp(simpson(profile_.custom_k, nodes_[i], s, 2));
    }

    Vec3 eval_impl(double s, int order) const override {
        if (order == 0) {
            const std::size_t i = nearest(s);
            if (s == nodes_[i]) return alpha_[i];
            auto integrand = [&](double u) {
                return factor_at(u) * gamma_->eval(u, 0);
            };
            return alpha_[i] + params_.b * simpson(integrand, nodes_[i], s, 2);
        }
        const double F = factor_at(s);
        const double bF = params_.b * F;
        if (order == 1) return bF * gamma_->eval(s, 0);
        const double k = profile_k(profile_, params_, s);
        if (order == 2)
            return bF * (k * gamma_->eval(s, 0) + gamma_->eval(s, 1));
        const double kp = profile_k_prime(profile_, params_, s);
        return bF * ((k * k + kp) * gamma_->eval(s, 0) +
                     2.0 * k * gamma_->eval(s, 1) + gamma_->eval(s, 2));
    }

    CurvePtr gamma_;
    KProfile profile_;
    ConstructionParams params_;
    std::vector<double> nodes_;
    std::vector<Vec3> alpha_;
    std::vector<double> factor_; // only populated for quadrature customs
};

const char* family_tag(KFamily f) {
    switch (f) {
        case KFamily::Tanh: return "tanh";
        case KFamily::Tan: return "tan";
        case KFamily::Zero: return "zero";
        default: return "custom";
    }
}

} // namespace

CurvePtr construct_alpha(const CurvePtr& gamma, const KProfile& profile,
                         const ConstructionParams& params,
                         const SampleGrid& grid) {
    if (!gamma) throw DomainError("construct_alpha: null generator");
    grid.validate();
    check_profile(profile);
    check_params(params);
    if (grid.step() > kCoarseLimit * (1.0 + 1e-12))
        throw GridTooCoarse("construct_alpha: grid step exceeds 1e-2");
    if (grid.s0 < gamma->s_min() - 1e-12 || grid.s1 > gamma->s_max() + 1e-12)
        throw DomainError("construct_alpha: grid leaves the generator domain");
    if (profile.family == KFamily::Tan) {
        // Fail fast with the pole guard before any quadrature happens.
        integrating_factor(profile, params, grid.s0);
        integrating_factor(profile, params, grid.s1);
    }

    ConstructionParams resolved = params;
    resolved.s_origin = resolve_origin(params, grid);

    const double tier_tol =
        gamma->quality() == DerivativeQuality::Analytic ? 1e-6 : 1e-3;
    const VerificationReport check =
        validate_unit_speed_spherical(*gamma, grid, tier_tol);
    if (!check.pass)
        throw NotSpherical("construct_alpha: generator fails the spherical "
                           "unit-speed check (" + check.cause + ")");

    // Integration nodes: the grid refined to the quadrature step, with the
    // origin inserted exactly.
    const int refine = std::max(1, int(std::ceil(grid.step() / kQuadStep)));
    std::vector<double> nodes;
    nodes.reserve(std::size_t(grid.count - 1) * refine + 2);
    for (int i = 0; i + 1 < grid.count; ++i) {
        const double lo = grid.node(i), hi = grid.node(i + 1);
        for (int j = 0; j < refine; ++j)
            nodes.push_back(lo + (hi - lo) * j / refine);
    }
    nodes.push_back(grid.s1);
    nodes.push_back(*resolved.s_origin);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [&](double a, double b) {
                                return std::fabs(a - b) <
                                       1e-12 * std::max(1.0, std::fabs(a));
                            }),
                nodes.end());

    // Factor values along the nodes (one pass even for quadrature customs).
    std::vector<double> factor(nodes.size());
    const bool chained_custom =
        profile.family == KFamily::Custom && !profile.closed_factor;
    if (chained_custom) {
        const std::vector<double> logf =
            cumulative_simpson(profile.custom_k, nodes);
        const auto origin_it = std::lower_bound(nodes.begin(), nodes.end(),
                                                *resolved.s_origin);
        const double log0 = logf[origin_it - nodes.begin()];
        for (std::size_t i = 0; i < nodes.size(); ++i)
            factor[i] = resolved.b2 * std::exp(logf[i] - log0);
    } else {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            factor[i] = integrating_factor(profile, resolved, nodes[i]);
    }

    // Cumulative position integral, then anchor alpha(s_origin) = a.
    std::size_t origin_idx =
        std::lower_bound(nodes.begin(), nodes.end(), *resolved.s_origin) -
        nodes.begin();
    auto integrand = [&](double u) -> Vec3 {
        double F;
        if (chained_custom) {
            auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
            std::size_t i = it - nodes.begin();
            if (i == nodes.size()) --i;
            if (i > 0 && u - nodes[i - 1] < nodes[i] - u) --i;
            F = u == nodes[i]
                    ? factor[i]
                    : factor[i] * std::exp(simpson(profile.custom_k, nodes[i], u, 1));
        } else {
            F = integrating_factor(profile, resolved, u);
        }
        return F * gamma->eval(u, 0);
    };
    const std::vector<Vec3> integral = cumulative_simpson(integrand, nodes);
    std::vector<Vec3> alpha(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        alpha[i] = resolved.a +
                   resolved.b * (integral[i] - integral[origin_idx]);

    const DerivativeQuality q =
        gamma->quality() == DerivativeQuality::Analytic
            ? DerivativeQuality::Analytic
            : DerivativeQuality::Spline;
    std::string name = std::string("alpha[") + family_tag(profile.family) +
                       "](" + gamma->name() + ")";
    return std::make_shared<ConstructedCurve>(
        std::move(name), gamma, profile, resolved, std::move(nodes),
        std::move(alpha), std::move(factor), q);
}

InvariantTriple predicted_invariants(const KProfile& profile,
                                     const std::function<double(double)>& k_g,
                                     const ConstructionParams& params,
                                     double s) {
    if (!(params.b > 0.0))
        throw DomainError("predicted_invariants: requires b > 0");
    if (!k_g) throw DomainError("predicted_invariants: missing k_g");
    const double F = integrating_factor(profile, params, s);
    const double bF = params.b * F;
    if (!(bF > 0.0))
        throw DomainError("predicted_invariants: factor must stay positive");
    return {1.0 / bF, k_g(s) / bF, bF};
}

double kg_slant_profile(const KgProfile& profile, double s) {
    if (profile.sign != 1 && profile.sign != -1)
        throw DomainError("kg_slant_profile: sign must be +1 or -1");
    const double u = profile.u(s);
    if (!std::isfinite(u)) throw DomainError("kg_slant_profile: non-finite u");
    if (profile.branch == KgBranch::Minus) {
        if (std::fabs(u) >= 1.0 - 1e-6)
            throw DomainError("kg_slant_profile: |m s + n| too close to 1 "
                              "for the minus branch");
        return profile.sign * std::fabs(u) / std::sqrt(1.0 - u * u);
    }
    return profile.sign * std::fabs(u) / std::sqrt(1.0 + u * u);
}

} // namespace mhl
