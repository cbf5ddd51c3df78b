#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclecover {

enum class ErrorCode {
  Argument,
  SizeLimit,
  Precondition,
  DegenerateRefinement,
  InfeasibleDegree,
  PartitionLimitExceeded,
  ConnectivityExhausted,
  TemplateResampleExceeded,
  UnbalancedAbsorptionRequest,
  NoMatching,
  CoverageShortfall,
  BalanceInfeasible,
  PartitionBudgetError,
  InternalValidation,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library error. `stage` names the pipeline stage that raised it, when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string stage = {})
      : std::runtime_error(message), code_(code), stage_(std::move(stage)) {}

  ErrorCode code() const { return code_; }
  const std::string& stage() const { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace cyclecover
