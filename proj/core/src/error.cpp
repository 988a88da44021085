#include "coslab/error.hpp"

namespace coslab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kEmptyPresentation: return "empty_presentation";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kCapExceeded: return "cap_exceeded";
    case ErrorCode::kBudgetExceeded: return "budget_exceeded";
    case ErrorCode::kSideMismatch: return "side_mismatch";
    case ErrorCode::kGroupMismatch: return "group_mismatch";
    case ErrorCode::kEmptySet: return "empty_set";
    case ErrorCode::kNotSymmetric: return "not_symmetric";
    case ErrorCode::kNotReal: return "not_real";
    case ErrorCode::kNotCosetConstant: return "not_coset_constant";
    case ErrorCode::kNoLargeValue: return "no_large_value";
    case ErrorCode::kNotAlmostBoolean: return "not_almost_boolean";
    case ErrorCode::kRegularityNotFound: return "regularity_not_found";
    case ErrorCode::kUnknownSuite: return "unknown_suite";
    case ErrorCode::kInfeasible: return "infeasible";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

namespace {

std::string describe_parse(std::string_view input, std::size_t position, const std::string& what) {
  std::string out = what + " at position " + std::to_string(position) + " in '";
  out.append(input);
  out += "'";
  return out;
}

}  // namespace

ParseError::ParseError(std::string_view input, std::size_t position, const std::string& what)
    : Error(ErrorCode::kParse, describe_parse(input, position, what)), position_(position) {}

CapExceededError::CapExceededError(ErrorCode code, std::size_t partial_count, const std::string& what)
    : Error(code, what + " (partial count " + std::to_string(partial_count) + ")"),
      partial_count_(partial_count) {}

}  // namespace coslab
