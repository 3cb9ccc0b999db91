#pragma once

#include "oat/trial_log.hpp"
#include "oat/trial_plan.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace oat {

/// Main-effect summary for one factor: level sums R, level means A, their
/// spread, and the selected level.
struct FactorEffects {
    std::string name;
    std::vector<double> level_sums;  // R, indexed by level-1
    std::vector<double> level_means; // A = R / (rows per level)
    double lowest = 0.0;             // min A
    double highest = 0.0;            // max A
    double range = 0.0;              // highest - lowest, full precision
    int best_level = 0;              // 1-based; argmax A (argmin when minimizing)
    LevelValue optimal_value;

    /// The range as it appears in the rendered table: the difference of the
    /// 3-decimal printed means, so the printed rows stay arithmetically
    /// consistent with each other. Ranking always uses the full-precision
    /// `range`.
    double printed_range() const;
};

struct RangeAnalysisReport {
    std::string metric;
    Direction direction = Direction::Maximize;
    std::vector<double> row_values;     // aggregated objective per row, 1..N
    std::vector<FactorEffects> factors; // declaration order
    std::vector<int> importance;        // factor indices, descending range
    Assignment optimal_assignment;      // composed per-factor best levels
    int best_row_index = 0;             // 1-based best tabulated row
    double best_row_value = 0.0;

    bool operator==(const RangeAnalysisReport&) const = default;
};

/// Step-4 range analysis over one completed plan. Requires exactly one ok
/// record per plan row (Error{MissingRows} otherwise) and the metric in
/// every aggregated set (Error{UnknownMetric}). The composed optimum takes
/// each factor's best level independently and need not be an array row.
RangeAnalysisReport analyze(const TrialPlan& plan, const std::vector<TrialRecord>& records,
                            const std::string& metric);

/// The classic printed layout: the N measured rows, then the R / A /
/// lowest / highest / range / importance / best-level / optimal-value rows
/// at three decimals (ties to even).
std::string render_report_text(const TrialPlan& plan, const RangeAnalysisReport& report);

nlohmann::json report_to_json(const RangeAnalysisReport& report);
RangeAnalysisReport report_from_json(const nlohmann::json& document);

/// Outcome of the confirmation run measured against the tabulated rows.
struct ConfirmationSummary {
    std::string metric;
    double confirmed = 0.0;
    double best_row_value = 0.0;
    int best_row_index = 0;
    bool exceeds_best_row = false; // strict, in the objective direction

    bool operator==(const ConfirmationSummary&) const = default;
};

/// Compares the confirmation trial with the best in-array row. The
/// confirmation's assignment must equal the report's composed optimum
/// (Error{AssignmentMismatch} otherwise).
ConfirmationSummary predicted_vs_confirmed(const RangeAnalysisReport& report,
                                           const TrialRecord& confirmation);

std::string render_confirmation_text(const ConfirmationSummary& summary);

nlohmann::json confirmation_to_json(const ConfirmationSummary& summary);

} // namespace oat
