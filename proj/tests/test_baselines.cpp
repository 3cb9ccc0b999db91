#include "oat/baselines.hpp"
#include "oat/errors.hpp"
#include "oat/synthetic.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <set>

using oat::Assignment;
using oat::ErrorKind;
using oat::RunOptions;

namespace {

RunOptions quiet_options() {
    RunOptions options;
    options.clock = [] { return 0.0; };
    return options;
}

nlohmann::json two_by_two_config() {
    return {{"schema_version", 1},
            {"factors",
             {{{"name", "a"}, {"levels", {0.0, 1.0}}},
              {{"name", "b"}, {"levels", {0.0, 2.0}}}}},
            {"objective", {{"metric", "acc"}, {"direction", "maximize"}}}};
}

// acc = a + b; argmax is (1, 2).
oat::FunctionObjective additive_sum_objective() {
    return oat::FunctionObjective([](const oat::TrialInput& input) -> oat::MetricSet {
        double value = 0.0;
        for (const auto& [name, level] : input.assignment) {
            (void)name;
            value += level.as_real();
        }
        return {{"acc", value}};
    });
}

std::set<Assignment> assignment_set(const std::vector<oat::TrialRecord>& records) {
    std::set<Assignment> out;
    for (const auto& record : records) {
        out.insert(record.assignment);
    }
    return out;
}

} // namespace

TEST_CASE("grid search enumerates the full factorial in lexicographic order") {
    const oat::TunerConfig config = oat::load_config(two_by_two_config());
    const auto objective = additive_sum_objective();
    const auto result = oat::grid_search(config, objective, quiet_options(), 0);

    REQUIRE(result.records.size() == 4);
    CHECK(result.row.runnings == 4);
    CHECK(result.row.method == "grid");
    // lexicographic level-index order: (1,1), (1,2), (2,1), (2,2)
    CHECK(result.records[0].assignment.at("a") == oat::LevelValue(0.0));
    CHECK(result.records[0].assignment.at("b") == oat::LevelValue(0.0));
    CHECK(result.records[1].assignment.at("a") == oat::LevelValue(0.0));
    CHECK(result.records[1].assignment.at("b") == oat::LevelValue(2.0));
    CHECK(result.records[3].assignment.at("a") == oat::LevelValue(1.0));

    // argmax by hand: a=1, b=2
    CHECK(result.row.optimal_assignment.at("a") == oat::LevelValue(1.0));
    CHECK(result.row.optimal_assignment.at("b") == oat::LevelValue(2.0));
    CHECK(result.row.metrics.at("acc") == doctest::Approx(3.0));
    CHECK(assignment_set(result.records).size() == 4);
}

TEST_CASE("grid search over the case-study table needs 81 runnings") {
    const oat::TunerConfig config = oat::load_config(oat_test::rnn_config_json());
    const oat::SyntheticObjective objective(oat::builtin_spec("additive-demo"));
    const auto result = oat::grid_search(config, objective, quiet_options(), 0);
    CHECK(result.row.runnings == 81);
    CHECK(assignment_set(result.records).size() == 81);
}

TEST_CASE("grid search respects the budget cap") {
    const oat::TunerConfig config = oat::load_config(oat_test::rnn_config_json());
    const oat::SyntheticObjective objective(oat::builtin_spec("additive-demo"));
    CHECK(oat_test::kind_of([&] { oat::grid_search(config, objective, quiet_options(), 10); }) ==
          ErrorKind::BudgetExceeded);
}

TEST_CASE("random search draws distinct seed-deterministic combinations") {
    const oat::TunerConfig config = oat::load_config(oat_test::rnn_config_json());
    const oat::SyntheticObjective objective(oat::builtin_spec("additive-demo"));

    const auto first = oat::random_search(config, objective, quiet_options(), 9, 42);
    CHECK(first.row.runnings == 9);
    CHECK(assignment_set(first.records).size() == 9);

    const auto repeat = oat::random_search(config, objective, quiet_options(), 9, 42);
    CHECK(assignment_set(repeat.records) == assignment_set(first.records));
    for (std::size_t i = 0; i < first.records.size(); ++i) {
        CHECK(first.records[i].assignment == repeat.records[i].assignment);
    }

    const auto other_seed = oat::random_search(config, objective, quiet_options(), 9, 43);
    CHECK(assignment_set(other_seed.records) != assignment_set(first.records));
}

TEST_CASE("an exhaustive random sample covers the same set as the grid") {
    const oat::TunerConfig config = oat::load_config(two_by_two_config());
    const auto objective = additive_sum_objective();
    const auto grid = oat::grid_search(config, objective, quiet_options(), 0);
    const auto random = oat::random_search(config, objective, quiet_options(), 4, 5);
    CHECK(assignment_set(grid.records) == assignment_set(random.records));
}

TEST_CASE("sample counts outside [1, h^k] are rejected") {
    const oat::TunerConfig config = oat::load_config(two_by_two_config());
    const auto objective = additive_sum_objective();
    CHECK(oat_test::kind_of(
              [&] { oat::random_search(config, objective, quiet_options(), 0, 1); }) ==
          ErrorKind::InvalidSampleCount);
    CHECK(oat_test::kind_of(
              [&] { oat::random_search(config, objective, quiet_options(), 5, 1); }) ==
          ErrorKind::InvalidSampleCount);
}

TEST_CASE("the comparison runs the design, the grid, and a matched random search") {
    const oat::TunerConfig config = oat::load_config(oat_test::rnn_config_json());
    const oat::SyntheticObjective objective(oat::builtin_spec("additive-demo"));

    oat::CompareOptions options;
    options.run = quiet_options();
    options.seed = 11;

    const oat::ComparisonReport report = oat::compare(config, objective, options);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].method == "oatm");
    CHECK(report.rows[0].runnings == 10); // 9 design rows + 1 confirmation
    CHECK(report.rows[1].method == "grid");
    CHECK(report.rows[1].runnings == 81);
    CHECK(report.rows[2].method == "random");
    CHECK(report.rows[2].runnings == 9);

    // additive objective: the composed optimum equals the grid optimum
    CHECK(report.rows[0].optimal_assignment == report.rows[1].optimal_assignment);
    CHECK(report.rows[0].metrics.at("acc") == report.rows[1].metrics.at("acc"));

    // the grid's best dominates every other method's best
    for (const auto& row : report.rows) {
        CHECK(report.rows[1].metrics.at("acc") >= row.metrics.at("acc"));
    }
}

TEST_CASE("external rows are merged into the comparison") {
    const oat::TunerConfig config = oat::load_config(two_by_two_config());
    const auto objective = additive_sum_objective();

    oat::ComparisonRow external;
    external.method = "external-opt";
    external.optimal_assignment.emplace("a", oat::LevelValue(1.0));
    external.optimal_assignment.emplace("b", oat::LevelValue(2.0));
    external.runnings = 9;
    external.wall_time_seconds = 12.5;
    external.metrics = {{"acc", 2.9}};

    oat::CompareOptions options;
    options.run = quiet_options();
    options.external_rows = {external};
    const oat::ComparisonReport report = oat::compare(config, objective, options);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[3].method == "external-opt");
    CHECK(report.rows[3].metrics.at("acc") == doctest::Approx(2.9));
}

TEST_CASE("comparison documents round-trip and render") {
    const oat::TunerConfig config = oat::load_config(two_by_two_config());
    const auto objective = additive_sum_objective();
    oat::CompareOptions options;
    options.run = quiet_options();
    const oat::ComparisonReport report = oat::compare(config, objective, options);

    const oat::ComparisonReport reloaded =
        oat::comparison_from_json(oat::comparison_to_json(report));
    CHECK(reloaded == report);

    const std::string text = oat::render_comparison_text(report);
    CHECK(text.find("oatm") != std::string::npos);
    CHECK(text.find("grid") != std::string::npos);
    CHECK(text.find("random") != std::string::npos);
    CHECK(text.find("runnings") != std::string::npos);
}

TEST_CASE("comparison artifacts land under the compare directory") {
    oat_test::TempDir dir("compare");
    const oat::TunerConfig config = oat::load_config(two_by_two_config());
    const auto objective = additive_sum_objective();
    oat::CompareOptions options;
    options.run = quiet_options();
    options.compare_dir = dir.path();
    oat::compare(config, objective, options);
    CHECK(std::filesystem::exists(dir.path() / "oatm" / "trials.log"));
    CHECK(std::filesystem::exists(dir.path() / "grid" / "trials.log"));
    CHECK(std::filesystem::exists(dir.path() / "random" / "trials.log"));
}
