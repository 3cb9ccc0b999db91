#pragma once

#include "oat/range_analysis.hpp"
#include "oat/trial_runner.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oat {

/// One line of the method-comparison table: who ran, how often, for how
/// long, and what it found.
struct ComparisonRow {
    std::string method;
    Assignment optimal_assignment;
    long runnings = 0;
    double wall_time_seconds = 0.0; // sum of trial wall times
    MetricSet metrics;              // metrics at the optimal assignment

    bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonReport {
    std::string metric;
    Direction direction = Direction::Maximize;
    std::vector<ComparisonRow> rows;

    bool operator==(const ComparisonReport&) const = default;
};

struct SearchResult {
    ComparisonRow row;
    std::vector<TrialRecord> records;
};

/// Exhaustive search: evaluates all h^k combinations in lexicographic
/// level-index order. Throws Error{BudgetExceeded} when h^k exceeds
/// budget_cap (0 = no cap).
SearchResult grid_search(const TunerConfig& config, const Objective& objective,
                         const RunOptions& options, long budget_cap);

/// Uniform sample of `samples` distinct combinations, deterministic for a
/// fixed seed. Throws Error{InvalidSampleCount} unless 1 <= samples <= h^k.
SearchResult random_search(const TunerConfig& config, const Objective& objective,
                           const RunOptions& options, long samples, std::uint64_t seed);

struct CompareOptions {
    RunOptions run;
    std::uint64_t seed = 1;
    long budget_cap = 0;                     // grid guard; 0 = no cap
    long random_samples = 0;                 // 0 = match the design row count
    std::filesystem::path compare_dir;       // root for per-method run dirs
    std::vector<ComparisonRow> external_rows; // e.g. results imported from elsewhere
};

/// Head-to-head table: the orthogonal-array pipeline (N rows plus one
/// confirmation), grid search, and random search with the same budget as
/// the design, plus any externally supplied rows.
ComparisonReport compare(const TunerConfig& config, const Objective& objective,
                         const CompareOptions& options);

std::string render_comparison_text(const ComparisonReport& report);

nlohmann::json comparison_to_json(const ComparisonReport& report);
ComparisonReport comparison_from_json(const nlohmann::json& document);

/// Parses external rows from a JSON array of row objects.
std::vector<ComparisonRow> comparison_rows_from_json(const nlohmann::json& document);

/// All h^k assignments in lexicographic level-index order (first factor most
/// significant). Exposed for tests and the brute-force oracle.
std::vector<Assignment> full_factorial(const FactorLevelTable& table);

} // namespace oat
