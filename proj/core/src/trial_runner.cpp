#include "oat/trial_runner.hpp"

#include "oat/errors.hpp"
#include "oat/hash.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

namespace oat {

namespace {

struct EffectiveOptions {
    int repetitions = 1;
    int parallelism = 1;
    Aggregator aggregator = Aggregator::Mean;
    std::function<double()> clock;
    std::optional<double> fixed_wall_time;
};

EffectiveOptions resolve(const TunerConfig& config, const RunOptions& options) {
    EffectiveOptions eff;
    eff.repetitions = options.repetitions > 0 ? options.repetitions : config.repetitions;
    eff.parallelism = std::max(1, options.parallelism);
    eff.aggregator = options.aggregator_set ? options.aggregator : config.aggregator;
    if (options.clock) {
        eff.clock = options.clock;
    } else {
        eff.clock = [] {
            return std::chrono::duration<double>(
                       std::chrono::steady_clock::now().time_since_epoch())
                .count();
        };
    }
    if (const char* fixed = std::getenv("OAT_FIXED_WALL_TIME")) {
        eff.fixed_wall_time = std::strtod(fixed, nullptr);
    }
    return eff;
}

TrialRecord execute_trial(const std::string& plan_id, int row_index,
                          const Assignment& assignment, const Objective& objective,
                          const EffectiveOptions& eff) {
    TrialRecord record;
    record.plan_id = plan_id;
    record.row_index = row_index;
    record.assignment = assignment;

    const double started = eff.clock();
    try {
        for (int rep = 1; rep <= eff.repetitions; ++rep) {
            TrialInput input;
            input.assignment = assignment;
            input.row_index = row_index;
            input.repetition_index = rep;
            input.seed = derive_trial_seed(plan_id, row_index, rep);
            record.repetitions.push_back(objective.evaluate(input));
        }
        record.aggregated = aggregate_metrics(record.repetitions, eff.aggregator);
        record.status = TrialRecord::Status::Ok;
    } catch (const Error& e) {
        // A failed repetition fails the whole trial: partial averages would
        // silently bias the analysis downstream.
        record.status = TrialRecord::Status::Failed;
        record.error = e.what();
        record.aggregated.clear();
    } catch (const std::exception& e) {
        record.status = TrialRecord::Status::Failed;
        record.error = std::string("ObjectiveFailure: unexpected: ") + e.what();
        record.aggregated.clear();
    }
    record.wall_time_seconds =
        eff.fixed_wall_time ? *eff.fixed_wall_time : eff.clock() - started;
    return record;
}

} // namespace

std::uint64_t derive_trial_seed(const std::string& plan_id, int row_index,
                                int repetition_index) {
    return sha256_seed(plan_id + ":" + std::to_string(row_index) + ":" +
                       std::to_string(repetition_index));
}

SubprocessObjective make_subprocess_objective(const TunerConfig& config,
                                              const RunOptions& options) {
    if (config.command.empty()) {
        throw Error(ErrorKind::SchemaError, "config has no objective command");
    }
    ObjectiveEndpoint endpoint;
    endpoint.command = config.command;
    endpoint.env = config.env;
    endpoint.timeout_seconds =
        options.timeout_seconds >= 0.0 ? options.timeout_seconds : config.timeout_seconds;
    return SubprocessObjective(std::move(endpoint));
}

std::vector<TrialRecord> run_assignments(const std::string& plan_id,
                                         const std::vector<Assignment>& assignments,
                                         const Objective& objective, const TunerConfig& config,
                                         const RunOptions& options) {
    const EffectiveOptions eff = resolve(config, options);
    const int total_rows = static_cast<int>(assignments.size());

    std::map<int, TrialRecord> completed; // row -> latest record
    const bool persist = !options.run_dir.empty();
    std::filesystem::path log_path;
    if (persist) {
        std::filesystem::create_directories(options.run_dir);
        log_path = trial_log_path(options.run_dir);
        if (std::filesystem::exists(log_path)) {
            repair_trial_log(log_path);
            for (auto& record : read_trial_log(log_path)) {
                if (record.plan_id != plan_id) {
                    throw Error(ErrorKind::PlanMismatch,
                                log_path.string() + " holds trials for plan " + record.plan_id +
                                    ", expected " + plan_id);
                }
                if (record.row_index >= 1 && record.row_index <= total_rows) {
                    completed[record.row_index] = std::move(record);
                }
            }
        }
    }

    // Rows lacking a complete ok record run (again); completed ok rows are
    // never duplicated.
    std::vector<int> pending;
    for (int row = 1; row <= total_rows; ++row) {
        auto it = completed.find(row);
        if (it == completed.end() || !it->second.ok()) {
            pending.push_back(row);
        }
    }

    if (!pending.empty()) {
        std::mutex mutex;
        std::condition_variable record_ready;
        std::map<int, TrialRecord> finished; // guarded by mutex
        std::atomic<std::size_t> next_task{0};
        std::atomic<bool> stop{false};
        int workers_done = 0; // guarded by mutex

        const int workers = static_cast<int>(std::min<std::size_t>(
            pending.size(), static_cast<std::size_t>(eff.parallelism)));

        // Workers claim tasks in ascending order, so the claimed set is
        // always a prefix of `pending` and the writer below can rely on
        // every gap before a finished row being filled eventually.
        auto worker = [&] {
            while (!stop.load(std::memory_order_acquire)) {
                const std::size_t task = next_task.fetch_add(1);
                if (task >= pending.size()) {
                    break;
                }
                const int row = pending[task];
                TrialRecord record = execute_trial(
                    plan_id, row, assignments[static_cast<std::size_t>(row - 1)], objective,
                    eff);
                {
                    std::lock_guard<std::mutex> lock(mutex);
                    finished.emplace(row, std::move(record));
                }
                record_ready.notify_all();
            }
            {
                std::lock_guard<std::mutex> lock(mutex);
                ++workers_done;
            }
            record_ready.notify_all();
        };

        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }

        // Single writer (this thread): records land in the log in ascending
        // row order no matter which worker finishes first.
        std::unique_lock<std::mutex> lock(mutex);
        for (std::size_t cursor = 0; cursor < pending.size(); ++cursor) {
            const int row = pending[cursor];
            record_ready.wait(lock, [&] {
                return finished.count(row) > 0 || workers_done == workers;
            });
            auto it = finished.find(row);
            if (it == finished.end()) {
                break; // stopped before this row was claimed
            }
            TrialRecord record = std::move(it->second);
            finished.erase(it);

            lock.unlock();
            if (persist) {
                append_trial_record(log_path, record);
            }
            bool keep_going = true;
            if (options.on_record) {
                keep_going = options.on_record(record);
            }
            lock.lock();

            completed[row] = std::move(record);
            if (!keep_going) {
                stop.store(true, std::memory_order_release);
            }
        }
        lock.unlock();

        stop.store(true, std::memory_order_release);
        for (auto& thread : pool) {
            thread.join();
        }
    }

    std::vector<TrialRecord> records;
    records.reserve(completed.size());
    for (auto& [row, record] : completed) {
        (void)row;
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<TrialRecord> run_plan(const TrialPlan& plan, const Objective& objective,
                                  const RunOptions& options) {
    return run_assignments(plan.plan_id, plan.assignments, objective, plan.config, options);
}

std::vector<TrialRecord> resume_plan(const TrialPlan& plan, const Objective& objective,
                                     const RunOptions& options) {
    if (options.run_dir.empty()) {
        throw Error(ErrorKind::IoError, "resume needs a run directory");
    }
    return run_plan(plan, objective, options);
}

TrialRecord run_single(const TrialPlan& plan, const Assignment& assignment,
                       const Objective& objective, const RunOptions& options, int row_index) {
    const EffectiveOptions eff = resolve(plan.config, options);
    return execute_trial(plan.plan_id, row_index, assignment, objective, eff);
}

} // namespace oat
