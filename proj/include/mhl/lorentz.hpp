#pragma once

#include <cmath>
#include <algorithm>

#include "mhl/errors.hpp"

namespace mhl {

/// Vector in R^3 carrying the index-1 scalar product
///   <x,y> = x1*y1 + x2*y2 - x3*y3.
/// All components are expected finite; operations never introduce NaN on
/// finite input.
struct Vec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
    }
    friend Vec3 operator*(double c, const Vec3& v) {
        return {c * v.x1, c * v.x2, c * v.x3};
    }
    friend Vec3 operator*(const Vec3& v, double c) { return c * v; }
    friend Vec3 operator/(const Vec3& v, double c) {
        return {v.x1 / c, v.x2 / c, v.x3 / c};
    }
    Vec3 operator-() const { return {-x1, -x2, -x3}; }

    Vec3& operator+=(const Vec3& b) { *this = *this + b; return *this; }
    Vec3& operator-=(const Vec3& b) { *this = *this - b; return *this; }

    bool finite() const {
        return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
    }
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

inline const char* to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "spacelike";
        case CausalCharacter::Timelike: return "timelike";
        default: return "lightlike";
    }
}

/// Index-1 scalar product.
inline double minkowski_dot(const Vec3& x, const Vec3& y) {
    return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3;
}

/// sqrt(|<x,x>|): length against the indefinite metric, zero on null vectors.
inline double pseudo_norm(const Vec3& x) {
    return std::sqrt(std::fabs(minkowski_dot(x, x)));
}

/// Euclidean helpers used for residuals and tolerance scales.
inline double euclid_dot(const Vec3& x, const Vec3& y) {
    return x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}
inline double euclid_norm(const Vec3& x) { return std::sqrt(euclid_dot(x, x)); }

/// Cross product adapted to the index-1 metric:
///   x ^ y = (x2*y3 - x3*y2, x3*y1 - x1*y3, x2*y1 - x1*y2).
/// Satisfies <x^y, z> = det(x, y, z) with the ordinary determinant.
inline Vec3 lorentz_cross(const Vec3& x, const Vec3& y) {
    return {x.x2 * y.x3 - x.x3 * y.x2,
            x.x3 * y.x1 - x.x1 * y.x3,
            x.x2 * y.x1 - x.x1 * y.x2};
}

/// Ordinary determinant of the rows (x, y, z).
inline double det3(const Vec3& x, const Vec3& y, const Vec3& z) {
    return x.x1 * (y.x2 * z.x3 - y.x3 * z.x2)
         - x.x2 * (y.x1 * z.x3 - y.x3 * z.x1)
         + x.x3 * (y.x1 * z.x2 - y.x2 * z.x1);
}

/// Default classification tolerance; scales with the squared Euclidean size
/// of the vector so the character is invariant under scaling.
inline double default_causal_tol(const Vec3& v) {
    return 1e-9 * std::max(1.0, euclid_dot(v, v));
}

/// Sign classification of <v,v>. |<v,v>| <= tol counts as lightlike, so the
/// zero vector is lightlike by convention.
inline CausalCharacter causal_character(const Vec3& v, double tol) {
    if (!v.finite() || !std::isfinite(tol))
        throw DomainError("causal_character: non-finite input");
    const double q = minkowski_dot(v, v);
    if (std::fabs(q) <= tol) return CausalCharacter::Lightlike;
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

inline CausalCharacter causal_character(const Vec3& v) {
    return causal_character(v, default_causal_tol(v));
}

} // namespace mhl
