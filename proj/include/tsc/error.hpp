#pragma once

#include <stdexcept>
#include <string>

namespace tsc {

enum class ErrorKind {
  Parse,
  Validation,      // stabilizer invalid (anticommuting pair, bad sign)
  Independence,    // local constraint found
  Window,          // windowed topological check failed
  Instability,     // constraint dimension not stable across torus sizes
  StringSolve,     // string construction exhausted escalation
  Structural,      // internal consistency violated (rank parity, duality, ...)
  NoLogicals,      // decode requested on a code with alpha = 0
  Usage,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  /// Stable process exit code for the CLI.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Parse: return 2;
      case ErrorKind::Validation: return 3;
      case ErrorKind::Independence: return 4;
      case ErrorKind::Window: return 5;
      case ErrorKind::Instability: return 6;
      case ErrorKind::StringSolve: return 7;
      case ErrorKind::Structural: return 8;
      case ErrorKind::NoLogicals: return 10;
      case ErrorKind::Usage: return 9;
    }
    return 1;
  }

private:
  ErrorKind kind_;
};

} // namespace tsc
