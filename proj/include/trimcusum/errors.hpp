#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trimcusum {

/// An argument lies outside the domain of the operation (u outside (0,1), d >= n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The trimmed sample has zero spread, so the self-normalized statistic is 0/0.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The quantity is not defined for this distribution family.
class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unusable input data. `line()` is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace trimcusum
