#include "confplan/error.hpp"

#include "confplan/tolerances.hpp"

namespace confplan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::InsufficientSeparation: return "InsufficientSeparation";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::AmbiguousGrouping: return "AmbiguousGrouping";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::LiftUnwrapFailure: return "LiftUnwrapFailure";
    case ErrorCode::NoParallelSide: return "NoParallelSide";
    case ErrorCode::MidpointMismatch: return "MidpointMismatch";
    case ErrorCode::ChainBreak: return "ChainBreak";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::OddCrossingParity: return "OddCrossingParity";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(tau_angle > 0.0) || !(tau_geom > 0.0) || n_time_samples == 0 || lift_steps == 0)
    throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
}

}  // namespace confplan
