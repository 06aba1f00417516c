#pragma once

#include <stdexcept>
#include <string>

namespace g2kit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct DegenerateMetric : Error { using Error::Error; };
struct IndefiniteForm : Error { using Error::Error; };
struct NearAssociative : Error { using Error::Error; };
struct DependentGenerators : Error { using Error::Error; };
struct AssociativeLimit : Error { using Error::Error; };
struct ZeroVolume : Error { using Error::Error; };
struct IndefiniteTriple : Error { using Error::Error; };
struct WrongType : Error { using Error::Error; };
struct MixedType : Error { using Error::Error; };
struct NonFlatLeaf : Error { using Error::Error; };
struct NonClosedAlpha : Error { using Error::Error; };
struct AmbiguousOrder : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace g2kit
