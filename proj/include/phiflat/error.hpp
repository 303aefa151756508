#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phiflat {

enum class ErrorCode {
  RingMismatch,
  EmptyFamily,
  ZeroSupport,
  MalformedMorphism,
  NoRegularElement,
  NotStabilized,
  NotAdmissible,
  ZeroAdmissibleImage,
  InfiniteValue,
  ZeroGenerator,
  InadmissibleCenter,
  NameCollision,
  NotADomain,
  InputNotFlatOnU,
  ParseError,
  UnresolvedName,
  InvalidArgument,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure surfaced by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace phiflat
