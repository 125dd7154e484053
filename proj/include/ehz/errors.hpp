#pragma once

#include <stdexcept>
#include <string>

namespace ehz {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Polytope construction / geometry.
struct UnboundedError : Error { using Error::Error; };
struct EmptyInteriorError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct SingularMatrixError : Error { using Error::Error; };

// Capacity solver and certificates.
struct InvalidIndexError : Error { using Error::Error; };
struct InfeasibleCandidateError : Error { using Error::Error; };
struct NonpositiveQError : Error { using Error::Error; };
struct NoPositiveCandidateError : Error { using Error::Error; };
struct OddDimensionError : Error { using Error::Error; };

// JSON / CLI input.
struct InputFormatError : Error { using Error::Error; };

}  // namespace ehz
