#include "polycast/error.hpp"

namespace polycast {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::InfeasiblePair: return "InfeasiblePair";
    case ErrorCode::DecompositionResidue: return "DecompositionResidue";
    case ErrorCode::EvennessViolated: return "EvennessViolated";
    case ErrorCode::PackingShortfall: return "PackingShortfall";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::MergeFailure: return "MergeFailure";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::SeparatorNotFound: return "SeparatorNotFound";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::InsufficientCrossingFlow: return "InsufficientCrossingFlow";
    case ErrorCode::DummyEdgeScheduled: return "DummyEdgeScheduled";
    case ErrorCode::InterferenceDetected: return "InterferenceDetected";
    case ErrorCode::MatchingInfeasible: return "MatchingInfeasible";
    case ErrorCode::Exceeded: return "Exceeded";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InfeasiblePair:
    case ErrorCode::EvennessViolated:
    case ErrorCode::NotATree:
    case ErrorCode::NotPlanar:
    case ErrorCode::BadParams:
    case ErrorCode::Exceeded:
    case ErrorCode::MatchingInfeasible:
      return 1;
    case ErrorCode::InvalidSchedule:
      return 2;
    default:
      return 3;
  }
}

}  // namespace polycast
