#ifndef DSRW_ERROR_HPP
#define DSRW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dsrw {

/// Every failure the engine can signal. Names double as the machine-readable
/// identifiers printed by the CLI and returned through the C API.
enum class ErrorCode {
  SyntaxError,
  DuplicateNode,
  UnknownNode,
  ArityMismatch,
  InconsistentArity,
  UnlabeledWithSuccessors,
  NoSuchNode,
  NoSuchEdge,
  FreshIdCollision,
  NotTotal,
  LabelNotPreserved,
  SuccessorNotPreserved,
  UnlabeledImageOfLabeled,
  DomainMismatch,
  InvalidHom,
  NotStronglyLabeled,
  InvalidSquare,
  RhoNotHom,
  UnlabeledMappedToLabeled,
  UnlabeledMergedByRho,
  BadRedirectTarget,
  MatchInvalid,
  DuplicateRule,
  NoSuchRule,
  NoMatch,
  FuelExhausted,
  Internal,
};

/// Stable identifier for an error code, e.g. "ArityMismatch".
const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }

  /// The message without the leading code name (what() carries both).
  const std::string& message() const noexcept { return message_; }

  /// Source position for parse-time errors (1-based; 0 when not applicable).
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

  Error& at(int line, int column) {
    line_ = line;
    column_ = column;
    return *this;
  }

 private:
  ErrorCode code_;
  std::string message_;
  int line_ = 0;
  int column_ = 0;
};

}  // namespace dsrw

#endif
