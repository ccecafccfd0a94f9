#ifndef FLEXECC_ERROR_HPP
#define FLEXECC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flexecc {

enum class ErrorKind {
  FieldMismatch,
  DivisionByZero,
  Overflow,
  InvalidArgument,
  LengthMismatch,
  UndefinedCorrelation,
  VarianceUndefined,
  DegenerateLadder,
  InvalidCurve,
  TraceFormat,
  TraceCorrupt,
  TraceMetadata,
  Io,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::FieldMismatch: return "field mismatch";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::LengthMismatch: return "length mismatch";
    case ErrorKind::UndefinedCorrelation: return "undefined correlation";
    case ErrorKind::VarianceUndefined: return "variance undefined";
    case ErrorKind::DegenerateLadder: return "degenerate ladder";
    case ErrorKind::InvalidCurve: return "invalid curve";
    case ErrorKind::TraceFormat: return "trace format";
    case ErrorKind::TraceCorrupt: return "trace corrupt";
    case ErrorKind::TraceMetadata: return "trace metadata";
    case ErrorKind::Io: return "i/o";
  }
  return "unknown";
}

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flexecc

#endif  // FLEXECC_ERROR_HPP
