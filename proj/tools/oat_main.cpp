// Command-line front end for orthogonal-array tuning. One subcommand per
// pipeline step: plan -> run -> analyze -> confirm, plus `tables` to browse
// available designs and `compare` for the grid/random head-to-head.

#include "oat/baselines.hpp"
#include "oat/catalog.hpp"
#include "oat/errors.hpp"
#include "oat/format.hpp"
#include "oat/hash.hpp"
#include "oat/range_analysis.hpp"
#include "oat/trial_runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string run_dir;
    std::string runs_root = "runs";
    int parallelism = 1;
    int repetitions = 0; // 0 = config value
    double timeout = -1.0;
    std::uint64_t seed = 1;
    long budget = 0;
    std::string metric;
    std::string external_path;
};

oat::RunOptions run_options(const CommonFlags& flags) {
    oat::RunOptions options;
    options.repetitions = flags.repetitions;
    options.parallelism = flags.parallelism;
    options.timeout_seconds = flags.timeout;
    return options;
}

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw oat::Error(oat::ErrorKind::IoError, "cannot read " + path.string());
    }
    nlohmann::json document;
    try {
        in >> document;
    } catch (const nlohmann::json::exception& e) {
        throw oat::Error(oat::ErrorKind::SchemaError, path.string() + ": " + e.what());
    }
    return document;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw oat::Error(oat::ErrorKind::IoError, "cannot write " + path.string());
    }
    out << content;
}

int cmd_tables(const std::string& filter) {
    struct Line {
        long rows;
        std::string text;
    };
    std::vector<Line> lines;
    std::map<std::pair<int, int>, bool> seen; // (h, k) -> listed

    auto add = [&](long rows, int h, int k, const std::string& origin) {
        if (seen.count({h, k})) {
            return;
        }
        seen[{h, k}] = true;
        double grid = 1.0;
        for (int i = 0; i < k; ++i) {
            grid *= h;
        }
        const double saved = oat::savings_fraction(rows, h, k);
        char grid_text[32];
        std::snprintf(grid_text, sizeof grid_text, "%.0f", grid);
        std::string text = "L" + std::to_string(rows) + "(" + std::to_string(h) + "^" +
                           std::to_string(k) + ")  " + std::to_string(rows) + " runnings, " +
                           "saves " + oat::format_percent(saved) + " vs " + grid_text +
                           "-run grid  [" + origin + "]";
        lines.push_back({rows, std::move(text)});
    };

    for (const auto& name : oat::catalog_names()) {
        const oat::OrthogonalArray array = oat::catalog_lookup(name);
        add(array.rows, array.levels, array.factors, "catalog");
    }
    for (int h : {2, 3, 4, 5, 7, 8, 9}) {
        add(static_cast<long>(h) * h, h, h + 1, "constructed");
    }

    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return a.rows != b.rows ? a.rows < b.rows : a.text < b.text;
    });
    for (const auto& line : lines) {
        if (filter.empty() || line.text.find(filter) != std::string::npos) {
            std::cout << line.text << '\n';
        }
    }
    std::cout << "any prime-power level count up to 49 is constructible via "
                 "L_(h^t)(h^k); larger designs are picked automatically when "
                 "factors exceed h+1\n";
    return 0;
}

int cmd_plan(const CommonFlags& flags) {
    const oat::TunerConfig config = oat::load_config_file(flags.config_path);
    const oat::TrialPlan plan = oat::make_plan(config);
    const fs::path dir = flags.run_dir.empty() ? fs::path(flags.runs_root) / plan.plan_id
                                               : fs::path(flags.run_dir);
    const fs::path plan_path = dir / "plan.json";

    if (fs::exists(plan_path)) {
        const oat::TrialPlan existing = oat::load_plan_file(plan_path);
        if (existing.plan_id != plan.plan_id) {
            throw oat::Error(oat::ErrorKind::PlanMismatch,
                             plan_path.string() + " already holds plan " + existing.plan_id +
                                 "; refusing to overwrite with " + plan.plan_id);
        }
    } else {
        fs::create_directories(dir);
        oat::write_plan_file(plan, plan_path);
    }

    const int h = plan.array.levels;
    const int k = plan.array.factors;
    std::cout << "plan " << plan.plan_id << '\n'
              << "design L" << plan.array.rows << "(" << h << "^" << k << "): "
              << plan.array.rows << " of " << static_cast<long>(config.table.full_factorial_size())
              << " combinations (saves "
              << oat::format_percent(oat::savings_fraction(plan.array.rows, h, k)) << ")\n"
              << "run dir " << dir.string() << '\n'
              << "next: oat run --run-dir " << dir.string() << '\n';
    return 0;
}

int cmd_run(const CommonFlags& flags) {
    const fs::path dir(flags.run_dir);
    const oat::TrialPlan plan = oat::load_plan_file(dir / "plan.json");
    oat::RunOptions options = run_options(flags);
    options.run_dir = dir;
    const oat::SubprocessObjective objective =
        oat::make_subprocess_objective(plan.config, options);

    const std::vector<oat::TrialRecord> records = oat::run_plan(plan, objective, options);
    int failed = 0;
    for (const auto& record : records) {
        if (!record.ok()) {
            ++failed;
            std::cerr << "row " << record.row_index << " failed: " << record.error << '\n';
        }
    }
    std::cout << (records.size() - static_cast<std::size_t>(failed)) << "/" << plan.rows()
              << " rows complete in " << dir.string() << '\n';
    if (failed > 0) {
        std::cerr << failed << " rows failed; re-run `oat run` to retry them\n";
        return 3;
    }
    std::cout << "next: oat analyze --run-dir " << dir.string() << '\n';
    return 0;
}

int cmd_analyze(const CommonFlags& flags) {
    const fs::path dir(flags.run_dir);
    const oat::TrialPlan plan = oat::load_plan_file(dir / "plan.json");
    const fs::path log_path = oat::trial_log_path(dir);
    if (!fs::exists(log_path)) {
        throw oat::Error(oat::ErrorKind::MissingRows,
                         "no trials have been run in " + dir.string());
    }

    // Later records supersede earlier ones for the same row (retries).
    std::map<int, oat::TrialRecord> latest;
    for (auto& record : oat::read_trial_log(log_path)) {
        latest[record.row_index] = std::move(record);
    }
    std::vector<oat::TrialRecord> records;
    records.reserve(latest.size());
    for (auto& [row, record] : latest) {
        (void)row;
        records.push_back(std::move(record));
    }

    const std::string metric = flags.metric.empty() ? plan.config.metric : flags.metric;
    const oat::RangeAnalysisReport report = oat::analyze(plan, records, metric);
    const std::string text = oat::render_report_text(plan, report);
    write_text_file(dir / "report.txt", text);
    write_text_file(dir / "report.doc", oat::report_to_json(report).dump(2) + "\n");

    std::cout << text;
    std::cout << "next: oat confirm --run-dir " << dir.string() << '\n';
    return 0;
}

int cmd_confirm(const CommonFlags& flags) {
    const fs::path dir(flags.run_dir);
    const oat::TrialPlan plan = oat::load_plan_file(dir / "plan.json");
    const fs::path report_path = dir / "report.doc";
    if (!fs::exists(report_path)) {
        throw oat::Error(oat::ErrorKind::MissingRows,
                         "no report in " + dir.string() + "; run `oat analyze` first");
    }
    const oat::RangeAnalysisReport report =
        oat::report_from_json(read_json_file(report_path));

    oat::RunOptions options = run_options(flags);
    const oat::SubprocessObjective objective =
        oat::make_subprocess_objective(plan.config, options);
    const oat::TrialRecord confirmation =
        oat::run_single(plan, report.optimal_assignment, objective, options);
    if (!confirmation.ok()) {
        std::cerr << "confirmation run failed: " << confirmation.error << '\n';
        return 3;
    }

    const oat::ConfirmationSummary summary =
        oat::predicted_vs_confirmed(report, confirmation);
    nlohmann::json document = {{"schema_version", 1},
                               {"record", oat::trial_record_to_json(confirmation)},
                               {"summary", oat::confirmation_to_json(summary)}};
    write_text_file(dir / "confirm.json", document.dump(2) + "\n");
    std::cout << oat::render_confirmation_text(summary);
    return 0;
}

int cmd_compare(const CommonFlags& flags) {
    const oat::TunerConfig config = oat::load_config_file(flags.config_path);

    oat::CompareOptions options;
    options.run = run_options(flags);
    options.seed = flags.seed;
    options.budget_cap = flags.budget;
    if (!flags.external_path.empty()) {
        options.external_rows =
            oat::comparison_rows_from_json(read_json_file(flags.external_path));
    }
    const std::string tag =
        oat::sha256_hex(config.canonical.dump() + "\ncompare:" + std::to_string(flags.seed))
            .substr(0, 16);
    options.compare_dir = flags.run_dir.empty()
                              ? fs::path(flags.runs_root) / ("compare-" + tag)
                              : fs::path(flags.run_dir);

    oat::SubprocessObjective objective = oat::make_subprocess_objective(config, options.run);
    const oat::ComparisonReport report = oat::compare(config, objective, options);
    const std::string text = oat::render_comparison_text(report);
    fs::create_directories(options.compare_dir);
    write_text_file(options.compare_dir / "compare.txt", text);
    write_text_file(options.compare_dir / "compare.doc",
                    oat::comparison_to_json(report).dump(2) + "\n");
    std::cout << text;
    std::cout << "written to " << options.compare_dir.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal-array tuning for black-box objectives"};
    app.require_subcommand(1);
    CommonFlags flags;

    auto* tables = app.add_subcommand("tables", "list available designs and their savings");
    std::string filter;
    tables->add_option("--filter", filter, "substring filter");

    auto* plan = app.add_subcommand("plan", "bind a design to a factor-level config");
    plan->add_option("--config", flags.config_path, "tuning config (JSON)")->required();
    plan->add_option("--run-dir", flags.run_dir, "run directory (default runs/<plan-id>)");
    plan->add_option("--runs-root", flags.runs_root, "root for generated run dirs");

    auto* run = app.add_subcommand("run", "execute planned trials (resumes)");
    run->add_option("--run-dir", flags.run_dir, "run directory")->required();
    run->add_option("--parallelism", flags.parallelism, "concurrent trials");
    run->add_option("--repetitions", flags.repetitions, "repetitions per trial");
    run->add_option("--timeout", flags.timeout, "per-evaluation timeout seconds");

    auto* analyze = app.add_subcommand("analyze", "range analysis of completed trials");
    analyze->add_option("--run-dir", flags.run_dir, "run directory")->required();
    analyze->add_option("--metric", flags.metric, "metric to analyze (default from config)");

    auto* confirm = app.add_subcommand("confirm", "run the composed optimum once");
    confirm->add_option("--run-dir", flags.run_dir, "run directory")->required();
    confirm->add_option("--repetitions", flags.repetitions, "repetitions for the confirmation");
    confirm->add_option("--timeout", flags.timeout, "per-evaluation timeout seconds");

    auto* compare = app.add_subcommand("compare", "design vs grid vs random head-to-head");
    compare->add_option("--config", flags.config_path, "tuning config (JSON)")->required();
    compare->add_option("--seed", flags.seed, "random-search seed");
    compare->add_option("--budget", flags.budget, "grid budget cap (0 = none)");
    compare->add_option("--parallelism", flags.parallelism, "concurrent trials");
    compare->add_option("--repetitions", flags.repetitions, "repetitions per trial");
    compare->add_option("--timeout", flags.timeout, "per-evaluation timeout seconds");
    compare->add_option("--external", flags.external_path,
                        "JSON file with extra comparison rows");
    compare->add_option("--run-dir", flags.run_dir, "output directory");
    compare->add_option("--runs-root", flags.runs_root, "root for generated run dirs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tables->parsed()) {
            return cmd_tables(filter);
        }
        if (plan->parsed()) {
            return cmd_plan(flags);
        }
        if (run->parsed()) {
            return cmd_run(flags);
        }
        if (analyze->parsed()) {
            return cmd_analyze(flags);
        }
        if (confirm->parsed()) {
            return cmd_confirm(flags);
        }
        if (compare->parsed()) {
            return cmd_compare(flags);
        }
    } catch (const oat::Error& e) {
        std::cerr << "oat: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "oat: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
