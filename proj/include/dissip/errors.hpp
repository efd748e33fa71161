#pragma once

#include <stdexcept>
#include <string>

namespace dissip {

// Base for all library errors. Callers that need to discriminate catch the
// concrete type; the CLI maps any of these to exit code 3 unless the error
// is part of a structured refusal.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSquare : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct SingularSigma : Error { using Error::Error; };
struct NotControllable : Error { using Error::Error; };
struct NotUnimodular : Error { using Error::Error; };
struct ImproperTransfer : Error { using Error::Error; };
struct SingularOutputBlock : Error { using Error::Error; };
struct PoleEvaluation : Error { using Error::Error; };
struct InputCardinalityExceeded : Error { using Error::Error; };
struct StrictnessViolated : Error { using Error::Error; };
struct SingularJDD : Error { using Error::Error; };
struct SelfAdjointnessFailed : Error { using Error::Error; };
struct UnmixingViolated : Error { using Error::Error; };
struct OddMultiplicity : Error { using Error::Error; };
struct NeutralityFailed : Error { using Error::Error; };
struct NotGraphSubspace : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct NonReal : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct StrictnessNotVerified : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace dissip
