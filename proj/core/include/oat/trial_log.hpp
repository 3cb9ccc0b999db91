#pragma once

#include "oat/level_value.hpp"
#include "oat/metrics.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace oat {

/// Result of one executed trial: the repetitions' metrics plus their
/// aggregate. Serialized one-per-line into the append-only trials.log; the
/// JSON form is byte-deterministic so a log fully determines the records.
struct TrialRecord {
    enum class Status { Ok, Failed };

    std::string plan_id;
    int row_index = 0; // 1-based plan row; 0 = confirmation run
    Assignment assignment;
    std::vector<MetricSet> repetitions;
    MetricSet aggregated;
    double wall_time_seconds = 0.0;
    Status status = Status::Ok;
    std::string error; // "<Kind>: detail" when failed

    bool ok() const { return status == Status::Ok; }
    bool operator==(const TrialRecord&) const = default;
};

nlohmann::json trial_record_to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const nlohmann::json& document);

std::filesystem::path trial_log_path(const std::filesystem::path& run_dir);

/// Reads every complete record line; an unterminated tail line (from an
/// interrupted writer) is ignored.
std::vector<TrialRecord> read_trial_log(const std::filesystem::path& path);

/// Drops an unterminated tail line so subsequent appends stay line-aligned.
void repair_trial_log(const std::filesystem::path& path);

void append_trial_record(const std::filesystem::path& path, const TrialRecord& record);

} // namespace oat
