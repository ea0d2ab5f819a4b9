#pragma once

#include <stdexcept>
#include <string>

namespace dq {

enum class ErrorKind {
  NonAppreciable,
  DimensionMismatch,
  Singular,
  InvalidProfile,
  ConvergenceFailure,
  PairingFailure,
  InconsistentResult,
  NonsingularityCertificationFailure,
  UnknownExample,
  Parse,
};

inline const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonAppreciable: return "NonAppreciable";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::InconsistentResult: return "InconsistentResult";
    case ErrorKind::NonsingularityCertificationFailure: return "NonsingularityCertificationFailure";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace dq
