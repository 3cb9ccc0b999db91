#include "oat/range_analysis.hpp"

#include "oat/errors.hpp"
#include "oat/format.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace oat {

namespace {

double parse_fixed(const std::string& text) {
    return std::strtod(text.c_str(), nullptr);
}

// Left-pads to width; the classic tables are right-aligned.
std::string pad(const std::string& text, std::size_t width) {
    if (text.size() >= width) {
        return text;
    }
    return std::string(width - text.size(), ' ') + text;
}

} // namespace

double FactorEffects::printed_range() const {
    return parse_fixed(format_fixed(highest, 3)) - parse_fixed(format_fixed(lowest, 3));
}

RangeAnalysisReport analyze(const TrialPlan& plan, const std::vector<TrialRecord>& records,
                            const std::string& metric) {
    const int rows = plan.array.rows;
    const int h = plan.array.levels;
    const int k = plan.array.factors;
    const int rows_per_level = rows / h;

    // Exactly one ok record per plan row.
    std::vector<const TrialRecord*> by_row(static_cast<std::size_t>(rows), nullptr);
    for (const auto& record : records) {
        if (record.row_index < 1 || record.row_index > rows) {
            throw Error(ErrorKind::MissingRows,
                        "record for row " + std::to_string(record.row_index) +
                            " is outside the plan's 1.." + std::to_string(rows));
        }
        if (!record.ok()) {
            throw Error(ErrorKind::MissingRows,
                        "row " + std::to_string(record.row_index) + " has no ok record (" +
                            record.error + ")");
        }
        auto& slot = by_row[static_cast<std::size_t>(record.row_index - 1)];
        if (slot != nullptr) {
            throw Error(ErrorKind::MissingRows,
                        "row " + std::to_string(record.row_index) + " has duplicate records");
        }
        slot = &record;
    }
    for (int r = 0; r < rows; ++r) {
        if (by_row[static_cast<std::size_t>(r)] == nullptr) {
            throw Error(ErrorKind::MissingRows,
                        "row " + std::to_string(r + 1) + " has not been executed");
        }
        if (by_row[static_cast<std::size_t>(r)]->aggregated.count(metric) == 0) {
            throw Error(ErrorKind::UnknownMetric,
                        "metric '" + metric + "' missing from row " + std::to_string(r + 1));
        }
    }

    RangeAnalysisReport report;
    report.metric = metric;
    report.direction = plan.table().objective_direction;
    report.row_values.reserve(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        report.row_values.push_back(by_row[static_cast<std::size_t>(r)]->aggregated.at(metric));
    }

    const bool maximize = report.direction == Direction::Maximize;
    for (int f = 0; f < k; ++f) {
        const FactorSpec& spec = plan.table().factors[static_cast<std::size_t>(f)];
        FactorEffects effects;
        effects.name = spec.name;
        effects.level_sums.assign(static_cast<std::size_t>(h), 0.0);
        for (int r = 0; r < rows; ++r) {
            effects.level_sums[static_cast<std::size_t>(plan.array.at(r, f) - 1)] +=
                report.row_values[static_cast<std::size_t>(r)];
        }
        effects.level_means.resize(static_cast<std::size_t>(h));
        for (int level = 0; level < h; ++level) {
            // The per-level row count N/h; for the classic h^2-row table
            // this equals h.
            effects.level_means[static_cast<std::size_t>(level)] =
                effects.level_sums[static_cast<std::size_t>(level)] /
                static_cast<double>(rows_per_level);
        }
        effects.lowest =
            *std::min_element(effects.level_means.begin(), effects.level_means.end());
        effects.highest =
            *std::max_element(effects.level_means.begin(), effects.level_means.end());
        effects.range = effects.highest - effects.lowest;

        effects.best_level = 1;
        for (int level = 2; level <= h; ++level) {
            const double candidate = effects.level_means[static_cast<std::size_t>(level - 1)];
            const double incumbent =
                effects.level_means[static_cast<std::size_t>(effects.best_level - 1)];
            // Ties keep the lowest level index.
            if (maximize ? candidate > incumbent : candidate < incumbent) {
                effects.best_level = level;
            }
        }
        effects.optimal_value = spec.levels[static_cast<std::size_t>(effects.best_level - 1)];
        report.optimal_assignment[spec.name] = effects.optimal_value;
        report.factors.push_back(std::move(effects));
    }

    report.importance.resize(static_cast<std::size_t>(k));
    std::iota(report.importance.begin(), report.importance.end(), 0);
    std::stable_sort(report.importance.begin(), report.importance.end(),
                     [&report](int a, int b) {
                         return report.factors[static_cast<std::size_t>(a)].range >
                                report.factors[static_cast<std::size_t>(b)].range;
                     });

    report.best_row_index = 1;
    for (int r = 2; r <= rows; ++r) {
        const double candidate = report.row_values[static_cast<std::size_t>(r - 1)];
        const double incumbent =
            report.row_values[static_cast<std::size_t>(report.best_row_index - 1)];
        if (maximize ? candidate > incumbent : candidate < incumbent) {
            report.best_row_index = r;
        }
    }
    report.best_row_value =
        report.row_values[static_cast<std::size_t>(report.best_row_index - 1)];
    return report;
}

std::string render_report_text(const TrialPlan& plan, const RangeAnalysisReport& report) {
    const int rows = plan.array.rows;
    const int h = plan.array.levels;
    const int k = plan.array.factors;

    std::vector<std::vector<std::string>> cells;
    auto row_of = [&](const std::string& head) {
        cells.emplace_back();
        cells.back().push_back(head);
        return cells.size() - 1;
    };

    {
        const auto header = row_of("row");
        for (const auto& factor : plan.table().factors) {
            cells[header].push_back(factor.name);
        }
        cells[header].push_back(report.metric);
    }
    for (int r = 0; r < rows; ++r) {
        const auto line = row_of(std::to_string(r + 1));
        for (int f = 0; f < k; ++f) {
            const FactorSpec& spec = plan.table().factors[static_cast<std::size_t>(f)];
            cells[line].push_back(
                spec.levels[static_cast<std::size_t>(plan.array.at(r, f) - 1)].display());
        }
        cells[line].push_back(format_fixed(report.row_values[static_cast<std::size_t>(r)], 3));
    }
    for (int level = 1; level <= h; ++level) {
        const auto line = row_of("R_level" + std::to_string(level));
        for (const auto& factor : report.factors) {
            cells[line].push_back(
                format_fixed(factor.level_sums[static_cast<std::size_t>(level - 1)], 3));
        }
        cells[line].push_back("");
    }
    for (int level = 1; level <= h; ++level) {
        const auto line = row_of("A_level" + std::to_string(level));
        for (const auto& factor : report.factors) {
            cells[line].push_back(
                format_fixed(factor.level_means[static_cast<std::size_t>(level - 1)], 3));
        }
        cells[line].push_back("");
    }
    const bool maximize = report.direction == Direction::Maximize;
    {
        const auto line = row_of(maximize ? "lowest" : "worst");
        for (const auto& factor : report.factors) {
            cells[line].push_back(format_fixed(factor.lowest, 3));
        }
        cells[line].push_back("");
    }
    {
        const auto line = row_of(maximize ? "highest" : "best");
        for (const auto& factor : report.factors) {
            cells[line].push_back(format_fixed(factor.highest, 3));
        }
        cells[line].push_back("");
    }
    {
        const auto line = row_of("range");
        for (const auto& factor : report.factors) {
            cells[line].push_back(format_fixed(factor.printed_range(), 3));
        }
        cells[line].push_back("");
    }
    {
        const auto line = row_of("best level");
        for (const auto& factor : report.factors) {
            cells[line].push_back("level " + std::to_string(factor.best_level));
        }
        cells[line].push_back("");
    }
    {
        const auto line = row_of("optimal value");
        for (const auto& factor : report.factors) {
            cells[line].push_back(factor.optimal_value.display());
        }
        cells[line].push_back("");
    }

    std::vector<std::size_t> widths;
    for (const auto& line : cells) {
        if (widths.size() < line.size()) {
            widths.resize(line.size(), 0);
        }
        for (std::size_t c = 0; c < line.size(); ++c) {
            widths[c] = std::max(widths[c], line[c].size());
        }
    }

    std::ostringstream out;
    out << "range analysis (" << report.metric << ", "
        << direction_name(report.direction) << ")\n";
    for (std::size_t l = 0; l < cells.size(); ++l) {
        for (std::size_t c = 0; c < cells[l].size(); ++c) {
            if (c > 0) {
                out << "  ";
            }
            out << pad(cells[l][c], widths[c]);
        }
        out << '\n';
        if (l == 0 || l == static_cast<std::size_t>(rows)) {
            out << std::string(
                       std::accumulate(widths.begin(), widths.end(), std::size_t{0}) +
                           2 * (widths.size() - 1),
                       '-')
                << '\n';
        }
    }

    out << "importance: ";
    for (std::size_t i = 0; i < report.importance.size(); ++i) {
        if (i > 0) {
            out << " > ";
        }
        out << report.factors[static_cast<std::size_t>(report.importance[i])].name;
    }
    out << '\n';
    out << "composed optimum:";
    for (const auto& factor : report.factors) {
        out << ' ' << factor.name << '=' << factor.optimal_value.display();
    }
    out << '\n';
    out << "best tabulated row: " << report.best_row_index << " ("
        << format_fixed(report.best_row_value, 3) << ")\n";
    return out.str();
}

nlohmann::json report_to_json(const RangeAnalysisReport& report) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& factor : report.factors) {
        factors.push_back({{"name", factor.name},
                           {"level_sums", factor.level_sums},
                           {"level_means", factor.level_means},
                           {"lowest", factor.lowest},
                           {"highest", factor.highest},
                           {"range", factor.range},
                           {"best_level", factor.best_level},
                           {"optimal_value", factor.optimal_value.to_json()}});
    }
    return {{"schema_version", 1},
            {"metric", report.metric},
            {"direction", direction_name(report.direction)},
            {"row_values", report.row_values},
            {"factors", factors},
            {"importance", report.importance},
            {"optimal_assignment", assignment_to_json(report.optimal_assignment)},
            {"best_row_index", report.best_row_index},
            {"best_row_value", report.best_row_value}};
}

RangeAnalysisReport report_from_json(const nlohmann::json& document) {
    RangeAnalysisReport report;
    try {
        report.metric = document.at("metric").get<std::string>();
        report.direction = direction_from_string(document.at("direction").get<std::string>());
        report.row_values = document.at("row_values").get<std::vector<double>>();
        for (const auto& factor_json : document.at("factors")) {
            FactorEffects effects;
            effects.name = factor_json.at("name").get<std::string>();
            effects.level_sums = factor_json.at("level_sums").get<std::vector<double>>();
            effects.level_means = factor_json.at("level_means").get<std::vector<double>>();
            effects.lowest = factor_json.at("lowest").get<double>();
            effects.highest = factor_json.at("highest").get<double>();
            effects.range = factor_json.at("range").get<double>();
            effects.best_level = factor_json.at("best_level").get<int>();
            effects.optimal_value = LevelValue::from_json(factor_json.at("optimal_value"));
            report.factors.push_back(std::move(effects));
        }
        report.importance = document.at("importance").get<std::vector<int>>();
        report.optimal_assignment = assignment_from_json(document.at("optimal_assignment"));
        report.best_row_index = document.at("best_row_index").get<int>();
        report.best_row_value = document.at("best_row_value").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError, std::string("malformed report document: ") + e.what());
    }
    return report;
}

ConfirmationSummary predicted_vs_confirmed(const RangeAnalysisReport& report,
                                           const TrialRecord& confirmation) {
    if (confirmation.assignment != report.optimal_assignment) {
        throw Error(ErrorKind::AssignmentMismatch,
                    "confirmation trial was not run at the report's composed optimum");
    }
    if (!confirmation.ok()) {
        throw Error(ErrorKind::MissingRows, "confirmation trial failed: " + confirmation.error);
    }
    if (confirmation.aggregated.count(report.metric) == 0) {
        throw Error(ErrorKind::UnknownMetric,
                    "confirmation trial lacks metric '" + report.metric + "'");
    }
    ConfirmationSummary summary;
    summary.metric = report.metric;
    summary.confirmed = confirmation.aggregated.at(report.metric);
    summary.best_row_value = report.best_row_value;
    summary.best_row_index = report.best_row_index;
    summary.exceeds_best_row = report.direction == Direction::Maximize
                                   ? summary.confirmed > summary.best_row_value
                                   : summary.confirmed < summary.best_row_value;
    return summary;
}

std::string render_confirmation_text(const ConfirmationSummary& summary) {
    std::ostringstream out;
    out << "confirmation " << summary.metric << ": " << format_fixed(summary.confirmed, 3)
        << "  best tabulated row " << summary.best_row_index << ": "
        << format_fixed(summary.best_row_value, 3) << "\n";
    if (summary.exceeds_best_row) {
        out << "the composed optimum exceeds the best tabulated row\n";
    } else {
        out << "the composed optimum does not exceed the best tabulated row\n";
    }
    return out.str();
}

nlohmann::json confirmation_to_json(const ConfirmationSummary& summary) {
    return {{"schema_version", 1},
            {"metric", summary.metric},
            {"confirmed", summary.confirmed},
            {"best_row_index", summary.best_row_index},
            {"best_row_value", summary.best_row_value},
            {"exceeds_best_row", summary.exceeds_best_row}};
}

} // namespace oat
