#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassproj {

enum class ErrorCode {
    InvalidArgument,
    RankDeficient,
    AmbientMismatch,
    DimMismatch,
    Singular,
    ScaleTooFine,
    EmptySet,
    PreconditionViolated,
    EmptyInput,
    WeightsInvalid,
    BadIndex,
    ArithmeticMismatch,
    InvalidCover,
    EmptySupport,
    DimOverflow,
    BadBase,
    Degenerate,
    TooLarge,
    Format,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a machine-readable code. Internal consistency
/// failures (a theorem-backed postcondition that does not hold) are reported
/// with std::logic_error instead, since they indicate a bug.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace grassproj
