#include "oat/errors.hpp"

namespace oat {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::UnsupportedLevels: return "UnsupportedLevels";
    case ErrorKind::TooManyFactors: return "TooManyFactors";
    case ErrorKind::UnknownTable: return "UnknownTable";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::UnequalLevelCounts: return "UnequalLevelCounts";
    case ErrorKind::DuplicateFactorName: return "DuplicateFactorName";
    case ErrorKind::InvalidCount: return "InvalidCount";
    case ErrorKind::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorKind::UnknownLevel: return "UnknownLevel";
    case ErrorKind::UnknownMetric: return "UnknownMetric";
    case ErrorKind::PlanMismatch: return "PlanMismatch";
    case ErrorKind::AssignmentMismatch: return "AssignmentMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ObjectiveFailure: return "ObjectiveFailure";
    case ErrorKind::ObjectiveProtocolError: return "ObjectiveProtocolError";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::MissingRows: return "MissingRows";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    }
    return "Error";
}

} // namespace oat
