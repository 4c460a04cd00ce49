#include "livsic/error.hpp"

namespace livsic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::DeadSymbol: return "DeadSymbol";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::RangeMismatch: return "RangeMismatch";
    case ErrorCode::InadmissibleWord: return "InadmissibleWord";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::ClosureTooLarge: return "ClosureTooLarge";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ForeignElement: return "ForeignElement";
    case ErrorCode::TorsionAlpha: return "TorsionAlpha";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::AlgebraNotClosed: return "AlgebraNotClosed";
    case ErrorCode::CentralityImpossible: return "CentralityImpossible";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, nlohmann::json details)
    : std::runtime_error(message), code_(code), details_(std::move(details)) {}

nlohmann::json Error::to_json() const {
  nlohmann::json j;
  j["error"] = std::string(to_string(code_));
  j["message"] = what();
  j["details"] = details_;
  return j;
}

}  // namespace livsic
