#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace planfit {

enum class ErrorCode {
  // catalog
  MalformedRow,
  DuplicateRowId,
  UnknownIntensity,
  EmptyText,
  ProviderUnavailable,
  DimensionMismatch,
  ZeroVector,
  EmptyQuery,
  IndexNotBuilt,
  InvalidConfig,
  // plan grammar
  NoPlanFound,
  UnparseableAmount,
  MissingDay,
  InvalidPlan,
  // summary
  UnknownId,
  UnknownTarget,
  MalformedCommand,
  NoArrayFound,
  UnknownExercise,
  // synthesis
  NoAvailability,
  NoExercisesSelected,
  CapsSaturated,
  UnrepairableWithinConstraints,
  // dialogue / service
  ScriptExhausted,
  NoPlanYet,
  SessionDone,
  SessionNotFound,
  TurnInFlight,
  InvalidArgument,
  CorruptLog,
  NoFixtures,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code plus the offending detail
/// (row id, line number, token...). `what()` renders "Code(detail): message".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, const std::string& message = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace planfit
