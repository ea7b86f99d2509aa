#pragma once

#include <stdexcept>
#include <string>

namespace hyperstab {

enum class ErrorKind {
  InvalidInput,
  InvalidParams,
  NotSPD,
  NotSymmetrizable,
  NoFeasibleK,
  NumericalError,
  BlowUp,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers branch
/// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the time stepper when a non-finite value appears.
class BlowUpError : public Error {
 public:
  BlowUpError(std::size_t step, double time, const std::string& what);

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t step_;
  double time_;
};

}  // namespace hyperstab
