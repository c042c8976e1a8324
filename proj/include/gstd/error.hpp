#pragma once

#include <stdexcept>
#include <string>

namespace gstd {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  InvalidArgument,
  InvalidFile,
  UnknownLabel,
  DimensionMismatch,
  Numerical,
  NotInformationallyComplete,
  NotAmplificationallyComplete,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gstd
