#include "oat/baselines.hpp"

#include "oat/errors.hpp"
#include "oat/format.hpp"
#include "oat/hash.hpp"
#include "oat/rng.hpp"

#include <algorithm>
#include <sstream>

namespace oat {

namespace {

Assignment assignment_at(const FactorLevelTable& table, const std::vector<int>& levels) {
    Assignment assignment;
    for (int f = 0; f < table.factor_count(); ++f) {
        const FactorSpec& factor = table.factors[static_cast<std::size_t>(f)];
        assignment.emplace(factor.name,
                           factor.levels[static_cast<std::size_t>(
                               levels[static_cast<std::size_t>(f)] - 1)]);
    }
    return assignment;
}

std::vector<int> decode_index(long index, int levels, int factors) {
    std::vector<int> digits(static_cast<std::size_t>(factors), 1);
    for (int f = factors - 1; f >= 0; --f) {
        digits[static_cast<std::size_t>(f)] = static_cast<int>(index % levels) + 1;
        index /= levels;
    }
    return digits;
}

long factorial_size_checked(const FactorLevelTable& table) {
    const double full = table.full_factorial_size();
    if (full > 1e15) {
        throw Error(ErrorKind::BudgetExceeded, "full factorial too large to enumerate");
    }
    return static_cast<long>(full);
}

// The best ok record in the objective direction; ties keep the earliest.
const TrialRecord* best_record(const std::vector<TrialRecord>& records,
                               const std::string& metric, Direction direction) {
    const TrialRecord* best = nullptr;
    for (const auto& record : records) {
        if (!record.ok() || record.aggregated.count(metric) == 0) {
            continue;
        }
        if (best == nullptr) {
            best = &record;
            continue;
        }
        const double candidate = record.aggregated.at(metric);
        const double incumbent = best->aggregated.at(metric);
        if (direction == Direction::Maximize ? candidate > incumbent
                                             : candidate < incumbent) {
            best = &record;
        }
    }
    return best;
}

ComparisonRow summarize(const std::string& method, const std::vector<TrialRecord>& records,
                        const std::string& metric, Direction direction) {
    const TrialRecord* best = best_record(records, metric, direction);
    if (best == nullptr) {
        throw Error(ErrorKind::MissingRows, method + ": no successful trials to summarize");
    }
    ComparisonRow row;
    row.method = method;
    row.optimal_assignment = best->assignment;
    row.runnings = static_cast<long>(records.size());
    row.metrics = best->aggregated;
    for (const auto& record : records) {
        row.wall_time_seconds += record.wall_time_seconds;
    }
    return row;
}

} // namespace

std::vector<Assignment> full_factorial(const FactorLevelTable& table) {
    const long total = factorial_size_checked(table);
    std::vector<Assignment> assignments;
    assignments.reserve(static_cast<std::size_t>(total));
    for (long index = 0; index < total; ++index) {
        assignments.push_back(
            assignment_at(table, decode_index(index, table.levels_per_factor(),
                                              table.factor_count())));
    }
    return assignments;
}

SearchResult grid_search(const TunerConfig& config, const Objective& objective,
                         const RunOptions& options, long budget_cap) {
    const long total = factorial_size_checked(config.table);
    if (budget_cap > 0 && total > budget_cap) {
        throw Error(ErrorKind::BudgetExceeded,
                    "grid needs " + std::to_string(total) + " runnings, budget is " +
                        std::to_string(budget_cap));
    }
    const std::string id = sha256_hex(config.canonical.dump() + "\ngrid");
    SearchResult result;
    result.records =
        run_assignments(id, full_factorial(config.table), objective, config, options);
    result.row = summarize("grid", result.records, config.metric,
                           config.table.objective_direction);
    return result;
}

SearchResult random_search(const TunerConfig& config, const Objective& objective,
                           const RunOptions& options, long samples, std::uint64_t seed) {
    const long total = factorial_size_checked(config.table);
    if (samples < 1 || samples > total) {
        throw Error(ErrorKind::InvalidSampleCount,
                    std::to_string(samples) + " samples requested from " +
                        std::to_string(total) + " combinations");
    }

    // Partial Fisher-Yates with a sparse swap map: duplicate-free, fully
    // determined by the seed, and O(samples) memory however large the grid.
    std::mt19937_64 rng(seed);
    std::map<long, long> swapped;
    auto slot = [&swapped](long i) {
        const auto it = swapped.find(i);
        return it == swapped.end() ? i : it->second;
    };
    std::vector<Assignment> assignments;
    assignments.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) {
        const long j =
            i + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(total - i)));
        const long picked = slot(j);
        swapped[j] = slot(i);
        assignments.push_back(assignment_at(
            config.table,
            decode_index(picked, config.table.levels_per_factor(),
                         config.table.factor_count())));
    }

    const std::string id =
        sha256_hex(config.canonical.dump() + "\nrandom:" + std::to_string(seed) + ":" +
                   std::to_string(samples));
    SearchResult result;
    result.records = run_assignments(id, assignments, objective, config, options);
    result.row = summarize("random", result.records, config.metric,
                           config.table.objective_direction);
    return result;
}

ComparisonReport compare(const TunerConfig& config, const Objective& objective,
                         const CompareOptions& options) {
    ComparisonReport report;
    report.metric = config.metric;
    report.direction = config.table.objective_direction;

    auto method_options = [&](const char* method) {
        RunOptions run = options.run;
        if (!options.compare_dir.empty()) {
            run.run_dir = options.compare_dir / method;
        } else if (!options.run.run_dir.empty()) {
            run.run_dir = options.run.run_dir / method;
        }
        return run;
    };

    // The design pipeline: N rows, analysis, one confirmation run.
    {
        TrialPlan plan = make_plan(config);
        RunOptions run = method_options("oatm");
        std::vector<TrialRecord> records = run_plan(plan, objective, run);
        RangeAnalysisReport analysis = analyze(plan, records, config.metric);
        TrialRecord confirmation =
            run_single(plan, analysis.optimal_assignment, objective, run);
        if (!confirmation.ok()) {
            throw Error(ErrorKind::ObjectiveFailure,
                        "confirmation run failed: " + confirmation.error);
        }

        ComparisonRow row;
        row.method = "oatm";
        row.optimal_assignment = analysis.optimal_assignment;
        row.runnings = static_cast<long>(records.size()) + 1;
        row.metrics = confirmation.aggregated;
        for (const auto& record : records) {
            row.wall_time_seconds += record.wall_time_seconds;
        }
        row.wall_time_seconds += confirmation.wall_time_seconds;
        report.rows.push_back(std::move(row));
    }

    const long design_rows = report.rows.front().runnings - 1;
    report.rows.push_back(
        grid_search(config, objective, method_options("grid"), options.budget_cap).row);
    const long samples =
        options.random_samples > 0 ? options.random_samples : design_rows;
    report.rows.push_back(
        random_search(config, objective, method_options("random"), samples, options.seed)
            .row);

    for (const auto& row : options.external_rows) {
        report.rows.push_back(row);
    }
    return report;
}

std::string render_comparison_text(const ComparisonReport& report) {
    std::vector<std::string> factor_names;
    for (const auto& row : report.rows) {
        for (const auto& [name, value] : row.optimal_assignment) {
            (void)value;
            if (std::find(factor_names.begin(), factor_names.end(), name) ==
                factor_names.end()) {
                factor_names.push_back(name);
            }
        }
    }
    std::vector<std::string> metric_names;
    for (const auto& row : report.rows) {
        for (const auto& [name, value] : row.metrics) {
            (void)value;
            if (std::find(metric_names.begin(), metric_names.end(), name) ==
                metric_names.end()) {
                metric_names.push_back(name);
            }
        }
    }

    std::vector<std::vector<std::string>> lines;
    {
        std::vector<std::string> header{"method"};
        header.insert(header.end(), factor_names.begin(), factor_names.end());
        header.push_back("runnings");
        header.push_back("time_s");
        header.insert(header.end(), metric_names.begin(), metric_names.end());
        lines.push_back(std::move(header));
    }
    for (const auto& row : report.rows) {
        std::vector<std::string> line{row.method};
        for (const auto& name : factor_names) {
            const auto it = row.optimal_assignment.find(name);
            line.push_back(it == row.optimal_assignment.end() ? "-" : it->second.display());
        }
        line.push_back(std::to_string(row.runnings));
        line.push_back(format_fixed(row.wall_time_seconds, 1));
        for (const auto& name : metric_names) {
            const auto it = row.metrics.find(name);
            line.push_back(it == row.metrics.end() ? "-" : format_fixed(it->second, 4));
        }
        lines.push_back(std::move(line));
    }

    std::vector<std::size_t> widths;
    for (const auto& line : lines) {
        if (widths.size() < line.size()) {
            widths.resize(line.size(), 0);
        }
        for (std::size_t c = 0; c < line.size(); ++c) {
            widths[c] = std::max(widths[c], line[c].size());
        }
    }
    std::ostringstream out;
    out << "comparison (" << report.metric << ", " << direction_name(report.direction)
        << ")\n";
    for (std::size_t l = 0; l < lines.size(); ++l) {
        for (std::size_t c = 0; c < lines[l].size(); ++c) {
            if (c > 0) {
                out << "  ";
            }
            std::string cell = lines[l][c];
            if (cell.size() < widths[c]) {
                cell += std::string(widths[c] - cell.size(), ' ');
            }
            out << cell;
        }
        out << '\n';
        if (l == 0) {
            std::size_t total = 2 * (widths.size() - 1);
            for (auto w : widths) {
                total += w;
            }
            out << std::string(total, '-') << '\n';
        }
    }
    return out.str();
}

nlohmann::json comparison_to_json(const ComparisonReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"method", row.method},
                        {"optimal_assignment", assignment_to_json(row.optimal_assignment)},
                        {"runnings", row.runnings},
                        {"wall_time_seconds", row.wall_time_seconds},
                        {"metrics", metric_set_to_json(row.metrics)}});
    }
    return {{"schema_version", 1},
            {"metric", report.metric},
            {"direction", direction_name(report.direction)},
            {"rows", rows}};
}

std::vector<ComparisonRow> comparison_rows_from_json(const nlohmann::json& document) {
    if (!document.is_array()) {
        throw Error(ErrorKind::SchemaError, "external rows must be a JSON array");
    }
    std::vector<ComparisonRow> rows;
    for (const auto& row_json : document) {
        ComparisonRow row;
        try {
            row.method = row_json.at("method").get<std::string>();
            row.optimal_assignment = assignment_from_json(row_json.at("optimal_assignment"));
            row.runnings = row_json.at("runnings").get<long>();
            row.wall_time_seconds = row_json.at("wall_time_seconds").get<double>();
            row.metrics = metric_set_from_json(row_json.at("metrics"), "external row");
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::SchemaError,
                        std::string("malformed comparison row: ") + e.what());
        }
        if (row.runnings < 1) {
            throw Error(ErrorKind::SchemaError, "comparison row needs runnings >= 1");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComparisonReport comparison_from_json(const nlohmann::json& document) {
    ComparisonReport report;
    try {
        report.metric = document.at("metric").get<std::string>();
        report.direction = direction_from_string(document.at("direction").get<std::string>());
        report.rows = comparison_rows_from_json(document.at("rows"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError,
                    std::string("malformed comparison document: ") + e.what());
    }
    return report;
}

} // namespace oat
