#pragma once

#include "oat/level_value.hpp"
#include "oat/metrics.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace oat {

/// One evaluation request. row_index 0 marks an ad-hoc evaluation (the
/// confirmation run); plan rows are 1-based.
struct TrialInput {
    Assignment assignment;
    int row_index = 0;
    int repetition_index = 1;
    std::uint64_t seed = 0;
};

nlohmann::json trial_input_to_json(const TrialInput& input);

/// Black-box objective. Implementations must be safe to call from multiple
/// threads. Failures are reported by throwing Error with one of the
/// objective kinds (ObjectiveFailure, ObjectiveProtocolError, Timeout).
class Objective {
public:
    virtual ~Objective() = default;
    virtual MetricSet evaluate(const TrialInput& input) const = 0;
};

/// In-process objective backed by a callable; used for synthetic objectives
/// and tests.
class FunctionObjective : public Objective {
public:
    using Fn = std::function<MetricSet(const TrialInput&)>;
    explicit FunctionObjective(Fn fn) : fn_(std::move(fn)) {}
    MetricSet evaluate(const TrialInput& input) const override { return fn_(input); }

private:
    Fn fn_;
};

/// Where and how to reach an external objective process.
struct ObjectiveEndpoint {
    std::vector<std::string> command;        // argv; argv[0] resolved via PATH
    std::map<std::string, std::string> env;  // extra environment entries
    double timeout_seconds = 0.0;            // per evaluation; 0 = no limit
};

/// Child-process objective speaking the line protocol:
///
///   stdin   one line, a JSON object {assignment, row_index,
///           repetition_index, seed}
///   stdout  any amount of output; the LAST line must be a JSON object
///           mapping metric names to finite numbers
///   env     OAT_SEED, OAT_ROW, OAT_REP duplicate the document fields
///   exit    0 on success
///
/// Everything is UTF-8 and newline-terminated. stderr passes through.
class SubprocessObjective : public Objective {
public:
    explicit SubprocessObjective(ObjectiveEndpoint endpoint);
    MetricSet evaluate(const TrialInput& input) const override;

    const ObjectiveEndpoint& endpoint() const { return endpoint_; }

private:
    ObjectiveEndpoint endpoint_;
};

} // namespace oat
