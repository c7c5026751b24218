#pragma once

#include <stdexcept>
#include <string>

namespace relqc {

/// Error taxonomy shared by all modules. The CLI maps kinds to exit codes:
/// check failures exit 1, data/config/parse problems exit 2, and anything
/// that means "the truncation or table is too small to decide" exits 3.
enum class ErrorKind {
  Config,          // inconsistent run configuration or pair data
  Data,            // malformed or contradictory input values
  Parse,           // unreadable file
  Structural,      // dual-complex / closedness violations
  Degree,          // inhomogeneous class where a homogeneous one is required
  Incompleteness,  // a needed table entry is absent and not provably zero
  Overflow,        // z-window or truncation too small for an exact result
  Spanning,        // presentation generators fail to span
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  /// Exit code under the CLI contract.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Incompleteness:
      case ErrorKind::Overflow:
        return 3;
      default:
        return 2;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace relqc
