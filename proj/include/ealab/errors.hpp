#pragma once

#include <stdexcept>
#include <string>

namespace ealab {

// Base class for every error raised by the library.  Callers that only need
// coarse handling can catch this; the CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- structure-constant / algebra construction -----------------------------
struct NotAntisymmetricError : Error { using Error::Error; };
struct JacobiViolationError : Error { using Error::Error; };
struct ParameterOutOfRangeError : Error { using Error::Error; };
struct UnsupportedAlgebraError : Error { using Error::Error; };

// --- bilinear forms and fields ----------------------------------------------
struct DegenerateFormError : Error { using Error::Error; };
struct NotLorentzianError : Error { using Error::Error; };
struct ZeroVectorError : Error { using Error::Error; };
struct SingularMatrixError : Error { using Error::Error; };

// --- normal-form reduction ---------------------------------------------------
struct InvalidAutomorphismError : Error { using Error::Error; };
struct TagInvalidForLambdaError : Error { using Error::Error; };

// A case-split invariant landed within a decade of its zero threshold.  The
// reduction is discontinuous there, so the call refuses to guess.
struct NumericallyAmbiguousError : Error { using Error::Error; };

// --- dynamics ---------------------------------------------------------------
struct NonIsolatedSolutionSetError : Error { using Error::Error; };
struct DomainExitError : Error { using Error::Error; };

// --- integration --------------------------------------------------------------
struct MaxStepsExceededError : Error { using Error::Error; };

// --- reporting / CLI -----------------------------------------------------------
struct ParseError : Error { using Error::Error; };
struct CorroborationFailureError : Error { using Error::Error; };

// The computed idempotent set differs from the frozen reference census.
struct CensusMismatchError : Error { using Error::Error; };

} // namespace ealab
