#include "irrvir/errors.hpp"

namespace irrvir {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::VarTableMismatch: return "VarTableMismatch";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::NotDivisible: return "NotDivisible";
        case ErrorKind::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
        case ErrorKind::UnknownCoefficient: return "UnknownCoefficient";
        case ErrorKind::SingularGram: return "SingularGram";
        case ErrorKind::SingularShapovalov: return "SingularShapovalov";
        case ErrorKind::ProportionalityFailure: return "ProportionalityFailure";
        case ErrorKind::DegreeOverflow: return "DegreeOverflow";
        case ErrorKind::NonAffineElimination: return "NonAffineElimination";
        case ErrorKind::NonUnitPivot: return "NonUnitPivot";
        case ErrorKind::ResidualNonZero: return "ResidualNonZero";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::ExpansionVariableLeak: return "ExpansionVariableLeak";
        case ErrorKind::WeightZeroObstruction: return "WeightZeroObstruction";
        case ErrorKind::WindowTooSmall: return "WindowTooSmall";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

}  // namespace irrvir
