#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polycast {

enum class ErrorCode {
  InvalidInput,
  InvalidSchedule,
  InfeasiblePair,
  DecompositionResidue,
  EvennessViolated,
  PackingShortfall,
  GridTooCoarse,
  MergeFailure,
  NotATree,
  SeparatorNotFound,
  NotPlanar,
  InsufficientCrossingFlow,
  DummyEdgeScheduled,
  InterferenceDetected,
  MatchingInfeasible,
  Exceeded,
  BadParams,
  Internal,
};

const char* to_string(ErrorCode code);

// CLI exit status for an error: 1 invalid input, 2 validation failed,
// 3 internal assertion.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void ensure(bool cond, ErrorCode code, std::string_view what) {
  if (!cond) throw Error(code, std::string(what));
}

}  // namespace polycast
