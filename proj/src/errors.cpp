#include "crnms/errors.hpp"

namespace crnms {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotOneDimensional: return "NotOneDimensional";
        case ErrorCode::ZeroBaseDirection: return "ZeroBaseDirection";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EmptyResult: return "EmptyResult";
        case ErrorCode::EssentialEmpty: return "EssentialEmpty";
        case ErrorCode::NotBiReaction: return "NotBiReaction";
        case ErrorCode::LambdaNotOpposed: return "LambdaNotOpposed";
        case ErrorCode::EmptyInterval: return "EmptyInterval";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::ConstantG: return "ConstantG";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::RecipeFailed: return "RecipeFailed";
        case ErrorCode::NoSecondCriticalPoint: return "NoSecondCriticalPoint";
        case ErrorCode::RootOutsideInterval: return "RootOutsideInterval";
        case ErrorCode::ClaimEndpointFailed: return "ClaimEndpointFailed";
        case ErrorCode::BisectionStalled: return "BisectionStalled";
        case ErrorCode::GoalUnattainable: return "GoalUnattainable";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace crnms
