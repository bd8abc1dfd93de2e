#include "kiss/error.hpp"

namespace kiss {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NonConverged: return "NON_CONVERGED";
    case ErrorCode::SingularityUndeclared: return "SINGULARITY_UNDECLARED";
    case ErrorCode::NoSignChange: return "NO_SIGN_CHANGE";
    case ErrorCode::OnCut: return "ON_CUT";
    case ErrorCode::TraceStalled: return "TRACE_STALLED";
    case ErrorCode::ImagResidual: return "IMAG_RESIDUAL";
    case ErrorCode::BranchAmbiguous: return "BRANCH_AMBIGUOUS";
    case ErrorCode::PathCrossesCut: return "PATH_CROSSES_CUT";
    case ErrorCode::Endpoint: return "ENDPOINT";
    case ErrorCode::DegenerateCycle: return "DEGENERATE_CYCLE";
    case ErrorCode::PathFailure: return "PATH_FAILURE";
    case ErrorCode::BadPeriod: return "BAD_PERIOD";
    case ErrorCode::LogBranchJump: return "LOG_BRANCH_JUMP";
    case ErrorCode::NotConverged: return "NOT_CONVERGED";
    case ErrorCode::AtPole: return "AT_POLE";
    case ErrorCode::CoincidentPoles: return "COINCIDENT_POLES";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::WrongRegime: return "WRONG_REGIME";
    case ErrorCode::SubsequenceViolation: return "SUBSEQUENCE_VIOLATION";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace kiss
