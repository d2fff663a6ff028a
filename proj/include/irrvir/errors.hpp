#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irrvir {

enum class ErrorKind {
    VarTableMismatch,
    UnknownVariable,
    NotDivisible,
    NonUnitLeadingCoefficient,
    UnknownCoefficient,
    SingularGram,
    SingularShapovalov,
    ProportionalityFailure,
    DegreeOverflow,
    NonAffineElimination,
    NonUnitPivot,
    ResidualNonZero,
    NotClosed,
    ExpansionVariableLeak,
    WeightZeroObstruction,
    WindowTooSmall,
    Infeasible,
    InternalConsistency,
    Parse,
    Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this type; the kind is
/// machine-readable and ends up verbatim in CLI reports.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace irrvir
