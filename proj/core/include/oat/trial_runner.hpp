#pragma once

#include "oat/objective.hpp"
#include "oat/trial_log.hpp"
#include "oat/trial_plan.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>

namespace oat {

/// Execution knobs. Zero-valued repetitions / negative timeout mean "take
/// the plan config's value".
struct RunOptions {
    int repetitions = 0;
    int parallelism = 1;
    double timeout_seconds = -1.0;
    Aggregator aggregator = Aggregator::Mean;
    bool aggregator_set = false;

    /// Run directory holding trials.log; empty disables persistence.
    std::filesystem::path run_dir;

    /// Monotonic clock in seconds; tests inject a fake one. The environment
    /// variable OAT_FIXED_WALL_TIME, when set, pins every recorded wall time
    /// to its value for byte-reproducible logs (same idea as
    /// SOURCE_DATE_EPOCH).
    std::function<double()> clock;

    /// Called from the log writer after each record lands, in row order.
    /// Returning false stops the run: no further rows are claimed, rows in
    /// flight still complete and persist.
    std::function<bool(const TrialRecord&)> on_record;
};

/// Per-repetition seed: a stable hash of (plan_id, row, repetition). The
/// tuner itself never randomizes; reproducibility lives in the seeds handed
/// to the objective.
std::uint64_t derive_trial_seed(const std::string& plan_id, int row_index,
                                int repetition_index);

/// Executes every plan row against the objective, one record per row,
/// persisting records incrementally in row order. Rows already completed in
/// an existing log are not re-run, so a crashed run resumes by calling this
/// again. Child failures become status=failed records (with the error kind
/// and location in `error`), not exceptions. Aggregated results do not
/// depend on parallelism or completion order.
std::vector<TrialRecord> run_plan(const TrialPlan& plan, const Objective& objective,
                                  const RunOptions& options);

/// Explicit resume entry point: requires options.run_dir and re-runs only
/// rows lacking a complete ok record. Throws Error{PlanMismatch} when the
/// log belongs to a different plan.
std::vector<TrialRecord> resume_plan(const TrialPlan& plan, const Objective& objective,
                                     const RunOptions& options);

/// One ad-hoc trial (the confirmation run), not appended to the plan log.
TrialRecord run_single(const TrialPlan& plan, const Assignment& assignment,
                       const Objective& objective, const RunOptions& options,
                       int row_index = 0);

/// Executes an arbitrary assignment list under a given id; run_plan and the
/// search baselines share this engine.
std::vector<TrialRecord> run_assignments(const std::string& plan_id,
                                         const std::vector<Assignment>& assignments,
                                         const Objective& objective, const TunerConfig& config,
                                         const RunOptions& options);

/// Builds the objective endpoint described by a config (command, env,
/// timeout), with option overrides applied.
SubprocessObjective make_subprocess_objective(const TunerConfig& config,
                                              const RunOptions& options);

} // namespace oat
