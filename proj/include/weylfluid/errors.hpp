#pragma once

#include <stdexcept>
#include <string>

namespace weylfluid {

enum class ErrorKind {
  domain_exit,
  singular_metric,
  not_timelike,
  signature,
  capability,
  gauge,
  reachability,
  transversality,
  stiffness,
  integrator_accuracy,
  comparison,
  construction,
  config,
  io,
};

const char* to_string(ErrorKind kind);

/// Base of every exception thrown by the library; carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weylfluid
