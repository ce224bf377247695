#include "planfit/error.h"

namespace planfit {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateRowId: return "DuplicateRowId";
    case ErrorCode::UnknownIntensity: return "UnknownIntensity";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::IndexNotBuilt: return "IndexNotBuilt";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NoPlanFound: return "NoPlanFound";
    case ErrorCode::UnparseableAmount: return "UnparseableAmount";
    case ErrorCode::MissingDay: return "MissingDay";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::MalformedCommand: return "MalformedCommand";
    case ErrorCode::NoArrayFound: return "NoArrayFound";
    case ErrorCode::UnknownExercise: return "UnknownExercise";
    case ErrorCode::NoAvailability: return "NoAvailability";
    case ErrorCode::NoExercisesSelected: return "NoExercisesSelected";
    case ErrorCode::CapsSaturated: return "CapsSaturated";
    case ErrorCode::UnrepairableWithinConstraints: return "UnrepairableWithinConstraints";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::NoPlanYet: return "NoPlanYet";
    case ErrorCode::SessionDone: return "SessionDone";
    case ErrorCode::SessionNotFound: return "SessionNotFound";
    case ErrorCode::TurnInFlight: return "TurnInFlight";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::NoFixtures: return "NoFixtures";
  }
  return "Unknown";
}

namespace {

std::string render(ErrorCode code, const std::string& detail, const std::string& message) {
  std::string out(error_code_name(code));
  out += '(';
  out += detail;
  out += ')';
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, const std::string& message)
    : std::runtime_error(render(code, detail, message)), code_(code), detail_(std::move(detail)) {}

}  // namespace planfit
