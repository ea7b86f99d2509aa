#include "hyperstab/error.hpp"

namespace hyperstab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NotSPD: return "NotSPD";
    case ErrorKind::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorKind::NoFeasibleK: return "NoFeasibleK";
    case ErrorKind::NumericalError: return "NumericalError";
    case ErrorKind::BlowUp: return "BlowUp";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

BlowUpError::BlowUpError(std::size_t step, double time, const std::string& what)
    : Error(ErrorKind::BlowUp,
            what + " (step " + std::to_string(step) + ", t = " + std::to_string(time) + ")"),
      step_(step),
      time_(time) {}

}  // namespace hyperstab
