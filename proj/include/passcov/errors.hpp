#pragma once

#include <stdexcept>
#include <string>

namespace passcov {

// Base class for every failure this library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct OutOfWaveguide : Error { using Error::Error; };
struct DegenerateDistance : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

// radiation / parameter validation
struct ParamOutOfRange : Error { using Error::Error; };

// local detection
struct DegenerateJamming : Error { using Error::Error; };

// fusion
struct ProbOutOfRange : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct EmptyWardenSet : Error { using Error::Error; };
struct TooManyWardens : Error { using Error::Error; };

// piecewise detectability
struct HeterogeneousSlope : Error { using Error::Error; };
struct SelectorInvalid : Error { using Error::Error; };

// optimizer
struct InfeasibleGeometry : Error { using Error::Error; };
struct NoFeasibleGridPoint : Error { using Error::Error; };
struct RejectionBudgetExceeded : Error { using Error::Error; };
struct NonFiniteGradient : Error { using Error::Error; };

// scenario / config I/O
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

} // namespace passcov
