#pragma once

#include <stdexcept>
#include <string>

namespace sdss {

/// Raised when input data violates a domain rule (bad TFN, unknown term,
/// zero membership mass, ...). The message names the offending cell when known.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the LP solver when a pivot element becomes too small to trust.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable files, malformed documents and unsupported schema versions.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pipeline failure tagged with the stage that raised it.
class StageError : public DomainError {
 public:
  StageError(std::string stage, const std::string &what)
      : DomainError(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string &stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace sdss
