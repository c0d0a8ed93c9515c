#pragma once

#include <stdexcept>
#include <string>

namespace starwall {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (reversed bounds, non-positive k, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Grids that do not match, or data that cannot be put on a uniform grid.
class GridError : public Error {
 public:
  using Error::Error;
};

/// A rotation or purity window that does not fit inside the sampled data.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// log_gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, long pole) : DomainError(what), pole_(pole) {}
  long pole() const noexcept { return pole_; }

 private:
  long pole_;
};

/// Mellin-Barnes contour passes through (or right of) a gamma pole.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// Residue series requested with parameters that produce higher-order poles.
class DegenerateParameterError : public Error {
 public:
  using Error::Error;
};

/// Complex position whose Mellin-Barnes integrand no longer decays.
class BranchDomainError : public Error {
 public:
  using Error::Error;
};

/// Sample point where a residual formula divides by zero.
class ExcludedSampleError : public Error {
 public:
  using Error::Error;
};

/// Scale fit against an identically zero reference.
class DegenerateReferenceError : public Error {
 public:
  using Error::Error;
};

/// A real-expected field came out with a significant imaginary part.
class NumericsError : public Error {
 public:
  using Error::Error;
};

}  // namespace starwall
