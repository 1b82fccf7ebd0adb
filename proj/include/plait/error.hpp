#pragma once

#include <stdexcept>
#include <string>

namespace plait {

// Every failure the library reports carries one of these codes. The C API
// maps them one-to-one onto plait_status values.
enum class ErrorCode {
  InvalidArgument = 1,
  CollinearOverlap,
  PointOnBoundary,
  DegenerateArrangement,
  WindowTooCoarse,
  IdenticalArcs,
  DegenerateAmplitude,
  ArgumentJump,
  NonIntegerOffset,
  SpliceMismatch,
  SelfIntersection,
  EmptyScene,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plait
