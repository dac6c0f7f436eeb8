#pragma once

#include <stdexcept>
#include <string>

namespace nqw {

enum class ErrorKind {
  InvalidArgument,
  NonPositiveSymbol,
  IllConditioned,
  BasisMismatch,
  BoundaryOverflow,
  DegenerateEverywhere,
  DerivativeMismatch,
  NoPeaks,
  SigmaZero,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// guard tripped so the CLI can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nqw
