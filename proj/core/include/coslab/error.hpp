#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coslab {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyPresentation,
  kParse,
  kCapExceeded,
  kBudgetExceeded,
  kSideMismatch,
  kGroupMismatch,
  kEmptySet,
  kNotSymmetric,
  kNotReal,
  kNotCosetConstant,
  kNoLargeValue,
  kNotAlmostBoolean,
  kRegularityNotFound,
  kUnknownSuite,
  kInfeasible,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures remember the offending byte offset in the input.
class ParseError : public Error {
 public:
  ParseError(std::string_view input, std::size_t position, const std::string& what);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Enumeration budgets: carries how far the search got before giving up.
class CapExceededError : public Error {
 public:
  CapExceededError(ErrorCode code, std::size_t partial_count, const std::string& what);

  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace coslab
