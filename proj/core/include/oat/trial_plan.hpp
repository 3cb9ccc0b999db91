#pragma once

#include "oat/factor_table.hpp"
#include "oat/metrics.hpp"
#include "oat/orthogonal_array.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace oat {

/// Everything a tuning run needs, parsed from one config document
/// (schema_version 1). `canonical` keeps the re-serialized document so the
/// plan id is stable across whitespace and key-order variations.
struct TunerConfig {
    FactorLevelTable table;
    std::string metric = "acc";
    int repetitions = 1;
    std::vector<std::string> command;
    std::map<std::string, std::string> env;
    double timeout_seconds = 0.0; // 0 = no limit
    Aggregator aggregator = Aggregator::Mean;
    nlohmann::json canonical;
};

TunerConfig load_config(const nlohmann::json& document);
TunerConfig load_config_file(const std::filesystem::path& path);

/// An orthogonal array bound to a factor-level table: one concrete
/// hyperparameter assignment per array row. Immutable after construction.
struct TrialPlan {
    OrthogonalArray array;
    TunerConfig config;
    std::vector<Assignment> assignments; // one per row
    std::string plan_id;                 // hash of canonical config + entries

    const FactorLevelTable& table() const { return config.table; }
    int rows() const { return array.rows; }
};

/// Binds the smallest suitable array to the table: L_{h^2}(h^k) whenever
/// k <= h + 1, the smallest larger construction otherwise, falling back to a
/// catalog entry with matching h when h is not a prime power.
TrialPlan make_plan(const TunerConfig& config);

/// Fraction of the full factorial saved by running only `runs` trials:
/// 1 - runs / h^k. Throws Error{InvalidCount} when runs exceeds h^k.
double savings_fraction(long runs, int levels, int factors);

nlohmann::json plan_to_json(const TrialPlan& plan);
TrialPlan plan_from_json(const nlohmann::json& document);

void write_plan_file(const TrialPlan& plan, const std::filesystem::path& path);
TrialPlan load_plan_file(const std::filesystem::path& path);

} // namespace oat
