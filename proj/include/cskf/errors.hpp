#pragma once

#include <stdexcept>
#include <string>

namespace cskf {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// sparse / dense linear algebra
struct NotPositiveDefinite : Error {
  int column;
  explicit NotPositiveDefinite(int col)
      : Error("matrix not positive definite at column " + std::to_string(col)),
        column(col) {}
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct SingularInnovation : Error {
  using Error::Error;
};
struct SingularCovariance : Error {
  using Error::Error;
};

// geometry / projection
struct BehindCamera : Error {
  BehindCamera() : Error("point behind camera") {}
};

// simulation
struct ConfigError : Error {
  using Error::Error;
};

// mapping
struct NotConverged : Error {
  int iterations;
  double gradient_norm;
  NotConverged(int it, double g)
      : Error("solver did not converge after " + std::to_string(it) +
              " iterations (|grad| = " + std::to_string(g) + ")"),
        iterations(it), gradient_norm(g) {}
};
struct RankDeficient : Error {
  using Error::Error;
};
struct TooFewPoses : Error {
  using Error::Error;
};
struct ConstraintInfeasible : Error {
  using Error::Error;
};

// bundle i/o
struct FormatError : Error {
  using Error::Error;
};
struct VersionMismatch : Error {
  using Error::Error;
};
struct ChecksumMismatch : Error {
  using Error::Error;
};

// filter
struct NonMonotonicTimestamps : Error {
  using Error::Error;
};
struct TriangulationFailed : Error {
  using Error::Error;
};
struct InsufficientFeatures : Error {
  using Error::Error;
};
struct DegenerateGeometry : Error {
  using Error::Error;
};

}  // namespace cskf
