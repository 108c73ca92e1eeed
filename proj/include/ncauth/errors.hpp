#pragma once

#include <stdexcept>
#include <string>

namespace ncauth {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter (non-prime modulus, duplicate points, bad ranges).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Mismatched dimensions or lengths.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A size guard (enumeration, brute force) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Cyclic or otherwise malformed network description.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// Attack coefficients violating the sum-to-one condition, or a bad target.
class AttackSpecError : public Error {
 public:
  using Error::Error;
};

/// Counting formula requested outside the range where it is stated (K >= k).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document; `field` names the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ncauth
