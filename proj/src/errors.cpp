#include "cyclecover/errors.hpp"

namespace cyclecover {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Argument: return "argument";
    case ErrorCode::SizeLimit: return "size-limit";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::DegenerateRefinement: return "degenerate-refinement";
    case ErrorCode::InfeasibleDegree: return "infeasible-degree";
    case ErrorCode::PartitionLimitExceeded: return "partition-limit-exceeded";
    case ErrorCode::ConnectivityExhausted: return "connectivity-exhausted";
    case ErrorCode::TemplateResampleExceeded: return "template-resample-exceeded";
    case ErrorCode::UnbalancedAbsorptionRequest: return "unbalanced-absorption-request";
    case ErrorCode::NoMatching: return "no-matching";
    case ErrorCode::CoverageShortfall: return "coverage-shortfall";
    case ErrorCode::BalanceInfeasible: return "balance-infeasible";
    case ErrorCode::PartitionBudgetError: return "partition-budget";
    case ErrorCode::InternalValidation: return "internal-validation";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace cyclecover
