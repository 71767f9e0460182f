#pragma once

#include <stdexcept>
#include <string>

namespace magic {

enum class ErrorKind {
  NotInvertible,
  ConformalPole,
  GridTooCoarse,
  IndexOutOfRange,
  NotHarmonic,
  SingularW,
  NotInSpan,
  SingularConfiguration,
  DomainViolation,
  TruncationInsufficient,
  UnsupportedTopology,
  InvalidArgument,
};

const char *error_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace magic
