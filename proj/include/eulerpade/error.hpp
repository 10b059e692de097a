#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eulerpade {

enum class ErrorCode {
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    InvalidPrime,
    ZeroElement,
    NotSplit,
    NotIntegral,
    PrecisionCapExceeded,
    NoConvergenceEvidence,
    RepeatedAlpha,
    ZeroAlpha,
    CutoffTooSmall,
    DegenerateP,
    AllLambdaZero,
    UnsupportedDescriptor,
    HeightTooSmall,
    DomainError,
    InvalidModulus,
    RepeatedRoots,
    NonIntegralRoots,
    OrderUnsupported,
    ParseError,
    InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace eulerpade
