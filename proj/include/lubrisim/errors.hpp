#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lubrisim {

/// Invalid argument, shape mismatch or non-finite input.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Film thickness dropped below the positivity guard at some node.
class PositivityError : public std::runtime_error {
public:
  PositivityError(std::size_t node, double value);

  std::size_t node() const noexcept { return node_; }
  double value() const noexcept { return value_; }

private:
  std::size_t node_;
  double value_;
};

/// Singular or otherwise failed linear solve.
class LinearAlgebraError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Amplitude ratio requested where it is not defined (k = 0).
class UndefinedRatioError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Scenario/configuration document could not be parsed or validated.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace lubrisim
