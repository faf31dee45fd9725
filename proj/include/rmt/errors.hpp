#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace rmt {

/// Base class for every error raised by the library. The CLI maps the
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid ensemble spec, experiment config, or command-line input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. Airy at |x| > 200,
/// marked instants of a non-even path).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge or a numeric consistency check failed.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<std::uint64_t> seed = std::nullopt)
      : Error(seed ? what + " (seed " + std::to_string(*seed) + ")" : what),
        seed_(seed) {}

  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

 private:
  std::optional<std::uint64_t> seed_;
};

/// Painleve II integration drifted off the Hastings-McLeod branch.
class BoundaryConditionError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Exhaustive enumeration budget exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmt
