#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace isolame {

enum class ErrorKind {
    DivisionByZero,
    PoleEvaluation,
    NotQuadratic,
    StepLimitExceeded,
    BlowupDetected,
    DegenerateLeadingCoefficient,
    NonConvergence,
    DegenerateCurve,
    LatticePoint,
    AtInfinity,
    BoundaryPoint,
    ZeroMomentum,
    DegenerateEigenline,
    DegenerateNormalization,
    CoincidentLines,
    ResonantInfinity,
    QAtInfinity,
    UnstableInput,
    NonEigenline,
    LoopTooClose,
    InvalidInvolution,
    ZeroDivisor,
    UnsupportedPoint,
    NotLameSpecial,
    InvalidConfiguration,
    DegenerateCrossRatio,
    InvalidArgument,
};

inline const char* error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::PoleEvaluation: return "PoleEvaluation";
        case ErrorKind::NotQuadratic: return "NotQuadratic";
        case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
        case ErrorKind::BlowupDetected: return "BlowupDetected";
        case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DegenerateCurve: return "DegenerateCurve";
        case ErrorKind::LatticePoint: return "LatticePoint";
        case ErrorKind::AtInfinity: return "AtInfinity";
        case ErrorKind::BoundaryPoint: return "BoundaryPoint";
        case ErrorKind::ZeroMomentum: return "ZeroMomentum";
        case ErrorKind::DegenerateEigenline: return "DegenerateEigenline";
        case ErrorKind::DegenerateNormalization: return "DegenerateNormalization";
        case ErrorKind::CoincidentLines: return "CoincidentLines";
        case ErrorKind::ResonantInfinity: return "ResonantInfinity";
        case ErrorKind::QAtInfinity: return "QAtInfinity";
        case ErrorKind::UnstableInput: return "UnstableInput";
        case ErrorKind::NonEigenline: return "NonEigenline";
        case ErrorKind::LoopTooClose: return "LoopTooClose";
        case ErrorKind::InvalidInvolution: return "InvalidInvolution";
        case ErrorKind::ZeroDivisor: return "ZeroDivisor";
        case ErrorKind::UnsupportedPoint: return "UnsupportedPoint";
        case ErrorKind::NotLameSpecial: return "NotLameSpecial";
        case ErrorKind::InvalidConfiguration: return "InvalidConfiguration";
        case ErrorKind::DegenerateCrossRatio: return "DegenerateCrossRatio";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

// Numerical failures (as opposed to domain errors) map to a distinct CLI exit code.
inline bool is_numerical(ErrorKind k) {
    return k == ErrorKind::StepLimitExceeded || k == ErrorKind::BlowupDetected ||
           k == ErrorKind::NonConvergence;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by the integrator; `last_good` is the last accepted position on the path.
class BlowupError : public Error {
public:
    BlowupError(std::complex<double> last_good, const std::string& what)
        : Error(ErrorKind::BlowupDetected, what), last_good_(last_good) {}

    std::complex<double> last_good() const noexcept { return last_good_; }

private:
    std::complex<double> last_good_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace isolame
