#pragma once

#include <stdexcept>
#include <string>

namespace nlsplit {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

/// A column appended to a QR window is (numerically) in the span of the
/// existing columns. Callers typically drop the oldest column and retry.
struct RankCollapse : Error {
  using Error::Error;
};

struct EmptyWindow : Error {
  using Error::Error;
};

/// The Anderson least-squares window has become numerically rank deficient.
struct DegenerateWindow : Error {
  using Error::Error;
};

struct InnerSolveFailure : Error {
  using Error::Error;
};

/// An iterate contains NaN/Inf; drivers report this as divergence.
struct NonFiniteIterate : Error {
  using Error::Error;
};

struct UnknownBenchmark : Error {
  using Error::Error;
};

struct TooManyOperators : Error {
  using Error::Error;
};

struct ZeroState : Error {
  using Error::Error;
};

/// Scenario/config validation error; message carries the offending key path.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace nlsplit
