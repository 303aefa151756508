#include "phiflat/error.hpp"

namespace phiflat {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::ZeroSupport: return "ZeroSupport";
    case ErrorCode::MalformedMorphism: return "MalformedMorphism";
    case ErrorCode::NoRegularElement: return "NoRegularElement";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::ZeroAdmissibleImage: return "ZeroAdmissibleImage";
    case ErrorCode::InfiniteValue: return "InfiniteValue";
    case ErrorCode::ZeroGenerator: return "ZeroGenerator";
    case ErrorCode::InadmissibleCenter: return "InadmissibleCenter";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::NotADomain: return "NotADomain";
    case ErrorCode::InputNotFlatOnU: return "InputNotFlatOnU";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace phiflat
