#pragma once

#include <stdexcept>
#include <string>

namespace dissipgen {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct Overflow : Error {
  using Error::Error;
};
struct SingularSystem : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct RankDeficientBasis : Error {
  using Error::Error;
};
struct DecompositionFails : Error {
  using Error::Error;
};
struct SurjectivityViolated : Error {
  using Error::Error;
};
struct SignatureMismatch : Error {
  using Error::Error;
};
struct NoTriple : Error {
  using Error::Error;
};
struct InvalidQuadruple : Error {
  using Error::Error;
};
struct NotAContraction : Error {
  using Error::Error;
};
struct NotDissipativeOnS : Error {
  using Error::Error;
};
struct CoreNotContained : Error {
  using Error::Error;
};
struct NotInDomain : Error {
  using Error::Error;
};
struct SingularStep : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct GridTooSmall : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace dissipgen
