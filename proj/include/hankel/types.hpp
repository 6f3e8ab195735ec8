#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace hankel {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Error taxonomy. Validation errors mean the input violates a documented
// precondition; numerical errors mean a computation could not meet its
// contract on otherwise valid input.
enum class ErrorCode {
    // validation
    NonPositiveSupport,
    NonPositiveWeight,
    DuplicateAtom,
    NormalizationViolated,
    NotUnimodular,
    MissingPsiTildeSample,
    DimensionMismatch,
    TruncationTooSmall,
    NotSelfAdjoint,
    InvalidArgument,
    IoError,
    // numerical
    NotPSD,
    NotSimple,
    CyclicityLost,
    SpectralRadiusNearOne,
    SolveFailed,
    TooCloseToSpectrum,
    QuadratureNotConverged,
    BoundaryLimitUnstable,
    StepUnstable,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonPositiveSupport: return "NonPositiveSupport";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::DuplicateAtom: return "DuplicateAtom";
        case ErrorCode::NormalizationViolated: return "NormalizationViolated";
        case ErrorCode::NotUnimodular: return "NotUnimodular";
        case ErrorCode::MissingPsiTildeSample: return "MissingPsiTildeSample";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NotSimple: return "NotSimple";
        case ErrorCode::CyclicityLost: return "CyclicityLost";
        case ErrorCode::SpectralRadiusNearOne: return "SpectralRadiusNearOne";
        case ErrorCode::SolveFailed: return "SolveFailed";
        case ErrorCode::TooCloseToSpectrum: return "TooCloseToSpectrum";
        case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorCode::BoundaryLimitUnstable: return "BoundaryLimitUnstable";
        case ErrorCode::StepUnstable: return "StepUnstable";
    }
    return "Unknown";
}

inline bool is_validation_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonPositiveSupport:
        case ErrorCode::NonPositiveWeight:
        case ErrorCode::DuplicateAtom:
        case ErrorCode::NormalizationViolated:
        case ErrorCode::NotUnimodular:
        case ErrorCode::MissingPsiTildeSample:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::TruncationTooSmall:
        case ErrorCode::NotSelfAdjoint:
        case ErrorCode::InvalidArgument:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hankel
