#ifndef VP1D_ERRORS_HPP
#define VP1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vp1d {

// Numerical-contract violations. Everything here maps to exit code 3 in the CLI;
// ConfigError maps to 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NeutralityViolation : NumericalError {
    using NumericalError::NumericalError;
};
struct NonPeriodicField : NumericalError {
    using NumericalError::NumericalError;
};
struct CflViolation : NumericalError {
    using NumericalError::NumericalError;
};
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};
struct BracketError : NumericalError {
    using NumericalError::NumericalError;
};
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct ConsistencyError : NumericalError {
    using NumericalError::NumericalError;
};
struct NotNormalized : NumericalError {
    using NumericalError::NumericalError;
};
struct NotMonotone : NumericalError {
    using NumericalError::NumericalError;
};
struct RangeExceeded : NumericalError {
    using NumericalError::NumericalError;
};
struct BandTooNarrow : NumericalError {
    using NumericalError::NumericalError;
};
struct MeshDegenerate : NumericalError {
    using NumericalError::NumericalError;
};
struct WindowTooShort : NumericalError {
    using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vp1d

#endif
