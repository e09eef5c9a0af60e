#pragma once

#include <stdexcept>
#include <string>

namespace nullity {

enum class ErrorCode {
    DimensionMismatch,
    ShapeMismatch,
    DegenerateValue,
    OrderExceeded,
    InvalidData,
    DegeneratePoint,
    NotElliptic,
    OrderOutOfRange,
    FlagCollapse,
    NullityJump,
    OrientationFailure,
    InvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateValue: return "DegenerateValue";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::InvalidData: return "InvalidData";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::FlagCollapse: return "FlagCollapse";
    case ErrorCode::NullityJump: return "NullityJump";
    case ErrorCode::OrientationFailure: return "OrientationFailure";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

} // namespace nullity
