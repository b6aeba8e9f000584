#pragma once

#include <stdexcept>
#include <string>

namespace btops {

// Bad inputs (manifests, parameters out of contract). CLI exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failures of the numerics themselves. CLI exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveCurvature : NumericalError {
    using NumericalError::NumericalError;
};

struct QuadratureUnderresolved : NumericalError {
    using NumericalError::NumericalError;
};

struct GramNotPositiveDefinite : NumericalError {
    using NumericalError::NumericalError;
};

struct NonFiniteIntegrand : NumericalError {
    using NumericalError::NumericalError;
};

struct NonPositiveDensity : NumericalError {
    using NumericalError::NumericalError;
};

struct EquivarianceViolation : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateFit : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace btops
