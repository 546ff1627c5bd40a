#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffcoh {

enum class ErrorCode {
    NotPrime,
    BadModulus,
    ReducibleModulus,
    BadSigmaPower,
    RingMismatch,
    NonInjectiveSigma,
    DimensionMismatch,
    BadMultiplier,
    NormalizedUnavailable,
    InvalidModule,
    NotCyclic,
    ChainMapViolation,
    TruncationTooSmall,
    ZeroEigenvalue,
    InvalidScenario,
    DegreeLimit,
    OracleMismatch,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::BadSigmaPower: return "BadSigmaPower";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NonInjectiveSigma: return "NonInjectiveSigma";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadMultiplier: return "BadMultiplier";
    case ErrorCode::NormalizedUnavailable: return "NormalizedUnavailable";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::ChainMapViolation: return "ChainMapViolation";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::DegreeLimit: return "DegreeLimit";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    }
    return "Unknown";
}

/// OracleMismatch means two independent computations disagreed; every other
/// code describes a bad input.
inline bool is_internal(ErrorCode code) { return code == ErrorCode::OracleMismatch; }

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace diffcoh
