#pragma once

#include <stdexcept>
#include <string>

namespace irl1 {

enum class ErrorKind {
  Argument,
  Domain,
  Degenerate,
  Numerical,
  MonitorViolation,
  Io,
  Memory,
};

/// Base exception for everything thrown by the library. The C API maps
/// `kind()` onto its status codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline Error argument_error(const std::string &what) {
  return Error(ErrorKind::Argument, what);
}
inline Error domain_error(const std::string &what) {
  return Error(ErrorKind::Domain, what);
}
inline Error numerical_error(const std::string &what) {
  return Error(ErrorKind::Numerical, what);
}

} // namespace irl1
