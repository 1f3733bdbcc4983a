#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hdx {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclass to an exit status.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's documented domain.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Malformed input data (unassigned symbol, non-cocycle, bad file...).
class InputError : public Error {
public:
  using Error::Error;
};

/// A structural precondition on groups or complexes does not hold
/// (not a subgroup, not normal, action not color preserving...).
class StructuralError : public Error {
public:
  using Error::Error;
};

/// An explicit resource cap was exceeded. Carries how far the computation
/// got before stopping.
class ResourceError : public Error {
public:
  ResourceError(const std::string& what, std::uint64_t partial)
      : Error(what + " (partial count " + std::to_string(partial) + ")"),
        partial_(partial) {}

  std::uint64_t partial() const noexcept { return partial_; }

private:
  std::uint64_t partial_;
};

class NumericalError : public Error {
public:
  NumericalError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

} // namespace hdx
