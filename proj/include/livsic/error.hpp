#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace livsic {

enum class ErrorCode {
  BadShape,
  DeadSymbol,
  NotIrreducible,
  RangeTooLarge,
  RangeMismatch,
  InadmissibleWord,
  NotAGroup,
  ClosureTooLarge,
  InfiniteGroup,
  DimensionMismatch,
  ForeignElement,
  TorsionAlpha,
  NotStronglyConnected,
  SingularMatrix,
  AlgebraNotClosed,
  CentralityImpossible,
  NotAHomomorphism,
  StateSpaceTooLarge,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Error raised by every library operation. `details` carries a
/// machine-readable witness (an unreachable pair, a failing triple, a JSON
/// pointer) that the CLI forwards verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json details = nlohmann::json::object());

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace livsic
