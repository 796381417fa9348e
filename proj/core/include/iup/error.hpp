#pragma once

#include <stdexcept>
#include <string>

namespace iup {

enum class ErrorKind {
    DegenerateMatrix,
    DimensionMismatch,
    CoefficientMismatch,
    EmptyPolytope,
    NonPositiveScale,
    UnboundedResult,
    NotCompatible,
    IncompatibleSymmetry,
    GroupNotFinite,
    OnDiscontinuity,
    OnBoundary,
    EscapedAmbient,
    NoPlateau,
    AmbiguousTransition,
    UnassignedImage,
    NotBracketing,
    NonMonotone,
    ParameterOutOfRange,
    DeltaInfeasible,
    SingularSystem,
    ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace iup
