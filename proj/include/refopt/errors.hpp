#pragma once

#include <stdexcept>
#include <string>

namespace refopt {

enum class ErrorKind {
    ParseError,
    DuplicatePeriod,
    EmptySeries,
    InsufficientOverlap,
    TooFewSecurities,
    LengthMismatch,
    ZeroVariance,
    SingularSystem,
    DegenerateCovariance,
    ResidualTooLarge,
    NotPositiveDefinite,
};

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DuplicatePeriod: return "DuplicatePeriod";
        case ErrorKind::EmptySeries: return "EmptySeries";
        case ErrorKind::InsufficientOverlap: return "InsufficientOverlap";
        case ErrorKind::TooFewSecurities: return "TooFewSecurities";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::ZeroVariance: return "ZeroVariance";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::DegenerateCovariance: return "DegenerateCovariance";
        case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    const char* kind_name() const { return error_kind_name(kind_); }

  private:
    ErrorKind kind_;
};

} // namespace refopt
