#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crnms {

enum class ErrorCode {
    Parse,
    InvalidArgument,
    NotOneDimensional,
    ZeroBaseDirection,
    DimensionMismatch,
    EmptyResult,
    EssentialEmpty,
    NotBiReaction,
    LambdaNotOpposed,
    EmptyInterval,
    OutOfDomain,
    ConstantG,
    PreconditionViolated,
    RecipeFailed,
    NoSecondCriticalPoint,
    RootOutsideInterval,
    ClaimEndpointFailed,
    BisectionStalled,
    GoalUnattainable,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace crnms
