#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtnreward {

enum class Errc {
  DuplicateId,
  NonPositiveRate,
  InvalidDistribution,
  InconsistentRate,
  NonFiniteMoment,
  InvalidLog,
  IndexOutOfRange,
  UnknownRelay,
  DegenerateTime,
  TooManyRelays,
  IncompleteLog,
  ZeroSuccessProbability,
  DomainError,
  EmptyTrace,
  UnsortedInput,
  InsufficientData,
  ConfigError,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the category without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dtnreward
