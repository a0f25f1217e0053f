#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slicealg {

enum class ErrorKind {
  DegenerateSlicePair,
  EndpointMismatch,
  OutOfBall,
  NotInDomain,
  NotInPathSpace,
  StemPairUnavailable,
  PathRequired,
  OutOfDomain,
  PathLeavesDomain,
  BranchPointHit,
  RoutingFailed,
  UnitMismatch,
  StencilLeavesDomain,
  StencilLeavesBall,
  DomainViolation,
  Schema,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit code without parsing messages.
class SliceError : public std::runtime_error {
 public:
  SliceError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slicealg
