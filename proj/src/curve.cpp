#include "mhl/curve.hpp"

#include <cmath>
#include <utility>

#include "mhl/numerics.hpp"
#include "mhl/spline.hpp"

namespace mhl {

Curve::Curve(std::string name, double s0, double s1, DerivativeQuality q)
    : name_(std::move(name)), s0_(s0), s1_(s1), quality_(q) {
    if (!(s0_ < s1_))
        throw DomainError(name_ + ": empty parameter interval");
}

Vec3 Curve::eval(double s, int order) const {
    if (order < 0 || order > 3)
        throw OrderError(name_ + ": derivative order must be 0..3");
    if (!std::isfinite(s))
        throw DomainError(name_ + ": non-finite parameter");
    // Absorb one-ulp overshoot from grid arithmetic at the ends.
    const double slack =
        1e-9 * std::max({1.0, std::fabs(s0_), std::fabs(s1_)});
    if (s < s0_ - slack || s > s1_ + slack)
        throw DomainError(name_ + ": parameter outside domain");
    return eval_impl(std::clamp(s, s0_, s1_), order);
}

double Curve::fd_step_hint(double s) const { return fd_step_12(s); }

namespace {

class AnalyticCurve final : public Curve {
public:
    AnalyticCurve(std::string name, std::function<Vec3(double, int)> f,
                  double s0, double s1)
        : Curve(std::move(name), s0, s1, DerivativeQuality::Analytic),
          f_(std::move(f)) {}

private:
    Vec3 eval_impl(double s, int order) const override { return f_(s, order); }
    std::function<Vec3(double, int)> f_;
};

class FdCurve final : public Curve {
public:
    FdCurve(std::string name, std::function<Vec3(double)> pos, double s0,
            double s1)
        : Curve(std::move(name), s0 + 4.0 * fd_step_3(s0),
                s1 - 4.0 * fd_step_3(s1), DerivativeQuality::FiniteDifference),
          pos_(std::move(pos)) {}

private:
    Vec3 eval_impl(double s, int order) const override {
        switch (order) {
            case 0: return pos_(s);
            case 1: return d1_richardson(pos_, s, fd_step_12(s));
            case 2: return d2_5point(pos_, s, fd_step_12(s));
            default: return d3_5point(pos_, s, fd_step_3(s));
        }
    }
    std::function<Vec3(double)> pos_;
};

class TabulatedCurve final : public Curve {
public:
    TabulatedCurve(const std::vector<double>& grid,
                   const std::vector<Vec3>& pts)
        : Curve("tabulated[" + std::to_string(grid.size()) + "]",
                grid.front(), grid.back(), DerivativeQuality::Spline) {
        std::vector<double> c1(grid.size()), c2(grid.size()), c3(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!pts[i].finite())
                throw FormatError("tabulated_curve: non-finite sample");
            c1[i] = pts[i].x1;
            c2[i] = pts[i].x2;
            c3[i] = pts[i].x3;
        }
        s1_ = CubicSpline(grid, c1);
        s2_ = CubicSpline(grid, c2);
        s3_ = CubicSpline(grid, c3);
        mean_gap_ = (grid.back() - grid.front()) / double(grid.size() - 1);
    }

    double fd_step_hint(double s) const override {
        // Spread difference stencils across several spline intervals so the
        // per-interval interpolation error averages out.
        return std::max(Curve::fd_step_hint(s), 6.0 * mean_gap_);
    }

private:
    Vec3 eval_impl(double s, int order) const override {
        return {s1_.eval(s, order), s2_.eval(s, order), s3_.eval(s, order)};
    }
    CubicSpline s1_, s2_, s3_;
    double mean_gap_ = 0.0;
};

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt3 = 1.7320508075688772935;

Vec3 deriv_cycle_trig(double a, double w, double s, int order) {
    // a*(cos(ws), sin(ws), .) derivative ladder for the first two slots.
    const double f = std::pow(w, order) * a;
    const double c = std::cos(w * s), d = std::sin(w * s);
    switch (order % 4) {
        case 0: return {f * c, f * d, 0.0};
        case 1: return {-f * d, f * c, 0.0};
        case 2: return {-f * c, -f * d, 0.0};
        default: return {f * d, -f * c, 0.0};
    }
}

// Closed derivative ladders for the catalog generators.
Vec3 example1_gamma(double s, int order) {
    if (order == 0) return {std::cos(s), std::sin(s), kSqrt2};
    return deriv_cycle_trig(1.0, 1.0, s, order);
}

Vec3 example2_gamma(double s, int order) {
    if (order == 0)
        return {kSqrt2 * std::cos(s / kSqrt2), kSqrt2 * std::sin(s / kSqrt2), 1.0};
    return deriv_cycle_trig(kSqrt2, 1.0 / kSqrt2, s, order);
}

Vec3 example3_gamma(double s, int order) {
    const double w = kSqrt3 * s;
    const double f = std::pow(kSqrt3, order) / kSqrt3;
    const double C = std::cosh(w), S = std::sinh(w);
    if (order == 0) return {C / kSqrt3, kSqrt2 / kSqrt3, S / kSqrt3};
    if (order % 2 == 1) return {f * S, 0.0, f * C};
    return {f * C, 0.0, f * S};
}

// The three catalog products share the shape alpha' = b*F*gamma with closed
// forms for F, F*k and F*(k^2+k'), so orders 1..3 follow one pattern:
//   alpha''  = b(Fk gamma + F gamma')
//   alpha''' = b(F(k^2+k') gamma + 2Fk gamma' + F gamma'')
struct FactorTriple {
    double F, Fk, Fq; // F, F*k, F*(k^2+k')
};

Vec3 product_derivative(double b, const FactorTriple& t,
                        Vec3 (*g)(double, int), double s, int order) {
    switch (order) {
        case 1: return b * t.F * g(s, 0);
        case 2: return b * (t.Fk * g(s, 0) + t.F * g(s, 1));
        default:
            return b * (t.Fq * g(s, 0) + 2.0 * t.Fk * g(s, 1) + t.F * g(s, 2));
    }
}

Vec3 example1_alpha(double s, int order) {
    if (order == 0) {
        const double c = std::cos(s), d = std::sin(s);
        const double cw = std::cos(kSqrt2 * s), dw = std::sin(kSqrt2 * s);
        return {-2.0 * cw * d + 2.0 * kSqrt2 * c * dw,
                2.0 * c * cw + 2.0 * kSqrt2 * d * dw,
                2.0 * dw};
    }
    // F = cos(sqrt2 s): Fk = -sqrt2 sin(sqrt2 s), F(k^2+k') = -2 cos(sqrt2 s).
    const double cw = std::cos(kSqrt2 * s), dw = std::sin(kSqrt2 * s);
    return product_derivative(2.0, {cw, -kSqrt2 * dw, -2.0 * cw},
                              &example1_gamma, s, order);
}

Vec3 example2_alpha_corrected(double s, int order) {
    const double w = s / kSqrt2;
    const double C = std::cosh(w), S = std::sinh(w);
    if (order == 0) {
        const double c = std::cos(w), d = std::sin(w);
        return {2.0 * C * d + 2.0 * c * S,
                2.0 * S * d - 2.0 * c * C,
                2.0 * kSqrt2 * S};
    }
    // F = cosh(s/sqrt2): Fk = sinh/sqrt2, F(k^2+k') = cosh/2.
    return product_derivative(2.0, {C, S / kSqrt2, C / 2.0},
                              &example2_gamma, s, order);
}

Vec3 example3_alpha(double s, int order) {
    const double C2 = std::cosh(kSqrt2 * s), S2 = std::sinh(kSqrt2 * s);
    if (order == 0) {
        const double C3 = std::cosh(kSqrt3 * s), S3 = std::sinh(kSqrt3 * s);
        const double k = kSqrt2 / kSqrt3;
        return {-2.0 * k * C3 * S2 + 2.0 * C2 * S3,
                2.0 / kSqrt3 * S2,
                2.0 * C2 * C3 - 2.0 * k * S2 * S3};
    }
    // F = cosh(sqrt2 s): Fk = sqrt2 sinh, F(k^2+k') = 2 cosh.
    return product_derivative(2.0, {C2, kSqrt2 * S2, 2.0 * C2},
                              &example3_gamma, s, order);
}

Vec3 hyperbola2(double s, int order) {
    const double C = 2.0 * std::cosh(s), S = 2.0 * std::sinh(s);
    if (order % 2 == 0) return {S, 0.0, C};
    return {C, 0.0, S};
}

Vec3 s12_circle(double s, int order) {
    return deriv_cycle_trig(1.0, 1.0, s, order);
}

Vec3 h02_geodesic(double s, int order) {
    const double C = std::cosh(s), S = std::sinh(s);
    if (order % 2 == 0) return {S, 0.0, C};
    return {C, 0.0, S};
}

struct CatalogEntry {
    const char* name;
    Vec3 (*fn)(double, int);
};

const CatalogEntry kCatalog[] = {
    {"example1_gamma", &example1_gamma},
    {"example2_gamma", &example2_gamma},
    {"example3_gamma", &example3_gamma},
    {"example1_alpha", &example1_alpha},
    {"example2_alpha_corrected", &example2_alpha_corrected},
    {"example3_alpha", &example3_alpha},
    {"hyperbola2", &hyperbola2},
    {"s12_circle", &s12_circle},
    {"h02_geodesic", &h02_geodesic},
};

} // namespace

CurvePtr analytic_curve(std::string name, std::function<Vec3(double, int)> f,
                        double s0, double s1) {
    return std::make_shared<AnalyticCurve>(std::move(name), std::move(f), s0, s1);
}

CurvePtr finite_difference_curve(std::string name,
                                 std::function<Vec3(double)> position,
                                 double s0, double s1) {
    return std::make_shared<FdCurve>(std::move(name), std::move(position), s0, s1);
}

CurvePtr builtin_curve(const std::string& name,
                       const std::map<std::string, double>&) {
    for (const auto& e : kCatalog)
        if (name == e.name)
            return analytic_curve(e.name, e.fn, -3.0, 3.0);
    throw UnknownCurve("builtin_curve: no catalog entry named '" + name + "'");
}

const std::vector<std::string>& builtin_curve_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kCatalog) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

CurvePtr tabulated_curve(const std::vector<double>& grid,
                         const std::vector<Vec3>& points) {
    if (grid.size() != points.size())
        throw FormatError("tabulated_curve: grid/point count mismatch");
    if (grid.size() < 8)
        throw FormatError("tabulated_curve: need at least 8 nodes");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw FormatError("tabulated_curve: grid must be strictly increasing");
    return std::make_shared<TabulatedCurve>(grid, points);
}

} // namespace mhl
