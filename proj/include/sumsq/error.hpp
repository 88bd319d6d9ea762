#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumsq {

enum class ErrorCode {
    NonPrime,
    EvenCharacteristic,
    ReducibleModulus,
    DivisionByZero,
    FieldMismatch,
    LengthMismatch,
    OutOfRange,
    InvalidPartition,
    BadParameters,
    BadDegree,
    GammaZero,
    IoError,
    Usage,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPrime: return "NonPrime";
        case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidPartition: return "InvalidPartition";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::BadDegree: return "BadDegree";
        case ErrorCode::GammaZero: return "GammaZero";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sumsq
