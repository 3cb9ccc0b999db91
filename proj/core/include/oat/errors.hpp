#pragma once

#include <stdexcept>
#include <string>

namespace oat {

// Every recoverable failure in the library carries one of these kinds.
// The CLI maps kind families onto process exit codes (see exit_code()).
enum class ErrorKind {
    // construction / configuration
    NotPrimePower,
    UnsupportedLevels,
    TooManyFactors,
    UnknownTable,
    SchemaError,
    UnequalLevelCounts,
    DuplicateFactorName,
    InvalidCount,
    InvalidSampleCount,
    UnknownLevel,
    UnknownMetric,
    PlanMismatch,
    AssignmentMismatch,
    IoError,
    // objective execution
    ObjectiveFailure,
    ObjectiveProtocolError,
    Timeout,
    // run state
    MissingRows,
    BudgetExceeded,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    // 2 = configuration, 3 = objective failure, 4 = incomplete data, 5 = budget
    int exit_code() const {
        switch (kind_) {
        case ErrorKind::ObjectiveFailure:
        case ErrorKind::ObjectiveProtocolError:
        case ErrorKind::Timeout:
            return 3;
        case ErrorKind::MissingRows:
            return 4;
        case ErrorKind::BudgetExceeded:
            return 5;
        default:
            return 2;
        }
    }

private:
    ErrorKind kind_;
};

} // namespace oat
