#pragma once

#include <stdexcept>
#include <string>

namespace mhl {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / evaluation errors.
struct DomainError : Error { using Error::Error; };
struct OrderError : Error { using Error::Error; };
struct UnknownCurve : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };

// Frame degeneracies.
struct LightlikeTangent : Error { using Error::Error; };
struct VanishingCurvature : Error { using Error::Error; };
struct VanishingTorsion : Error { using Error::Error; };
struct DegenerateBranch : Error { using Error::Error; };

// Spherical-curve machinery.
struct NotSpherical : Error { using Error::Error; };
struct BadInitialFrame : Error { using Error::Error; };
struct UnsupportedCase : Error { using Error::Error; };

// Profile / quadrature guards.
struct PoleProximity : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };

// Linear algebra / statistics.
struct SingularSystem : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };

} // namespace mhl
