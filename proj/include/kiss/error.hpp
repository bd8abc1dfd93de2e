#pragma once

#include <stdexcept>
#include <string>

namespace kiss {

enum class ErrorCode {
  InvalidArgument,
  NonConverged,
  SingularityUndeclared,
  NoSignChange,
  OnCut,
  TraceStalled,
  ImagResidual,
  BranchAmbiguous,
  PathCrossesCut,
  Endpoint,
  DegenerateCycle,
  PathFailure,
  BadPeriod,
  LogBranchJump,
  NotConverged,
  AtPole,
  CoincidentPoles,
  SingularSystem,
  WrongRegime,
  SubsequenceViolation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace kiss
