#include "plait/error.hpp"

namespace plait {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CollinearOverlap: return "CollinearOverlap";
    case ErrorCode::PointOnBoundary: return "PointOnBoundary";
    case ErrorCode::DegenerateArrangement: return "DegenerateArrangement";
    case ErrorCode::WindowTooCoarse: return "WindowTooCoarse";
    case ErrorCode::IdenticalArcs: return "IdenticalArcs";
    case ErrorCode::DegenerateAmplitude: return "DegenerateAmplitude";
    case ErrorCode::ArgumentJump: return "ArgumentJump";
    case ErrorCode::NonIntegerOffset: return "NonIntegerOffset";
    case ErrorCode::SpliceMismatch: return "SpliceMismatch";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace plait
