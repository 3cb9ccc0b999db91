#include "oat/baselines.hpp"
#include "oat/errors.hpp"
#include "oat/range_analysis.hpp"
#include "oat/synthetic.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using oat::Direction;
using oat::ErrorKind;
using oat::RangeAnalysisReport;
using oat::TrialRecord;

namespace {

oat::TrialPlan rnn_plan() {
    return oat::make_plan(oat::load_config(oat_test::rnn_config_json()));
}

std::vector<TrialRecord> records_for(const oat::TrialPlan& plan,
                                     const std::array<double, 9>& values) {
    std::vector<TrialRecord> records;
    for (int r = 0; r < 9; ++r) {
        TrialRecord record;
        record.plan_id = plan.plan_id;
        record.row_index = r + 1;
        record.assignment = plan.assignments[static_cast<std::size_t>(r)];
        record.repetitions = {{{"acc", values[static_cast<std::size_t>(r)]}}};
        record.aggregated = record.repetitions[0];
        record.status = TrialRecord::Status::Ok;
        records.push_back(std::move(record));
    }
    return records;
}

// Independent oracle: per-factor level sums by direct summation over the
// rows, reading level indices straight from the array.
std::vector<std::vector<double>> level_sum_oracle(const oat::OrthogonalArray& array,
                                                  const std::array<double, 9>& values) {
    std::vector<std::vector<double>> sums(
        static_cast<std::size_t>(array.factors),
        std::vector<double>(static_cast<std::size_t>(array.levels), 0.0));
    for (int r = 0; r < array.rows; ++r) {
        for (int f = 0; f < array.factors; ++f) {
            sums[static_cast<std::size_t>(f)][static_cast<std::size_t>(array.at(r, f) - 1)] +=
                values[static_cast<std::size_t>(r)];
        }
    }
    return sums;
}

bool near3(double value, double expected) {
    return std::abs(value - expected) < 5e-4;
}

} // namespace

TEST_CASE("the RNN case-study analysis reproduces the published table") {
    const oat::TrialPlan plan = rnn_plan();
    const auto records = records_for(plan, oat_test::rnn_accuracies());
    const RangeAnalysisReport report = oat::analyze(plan, records, "acc");

    REQUIRE(report.factors.size() == 4);

    // R rows
    const std::array<std::array<double, 3>, 4> expected_sums = {{
        {2.196, 2.136, 1.703}, // lr
        {2.660, 1.932, 1.443}, // lambda
        {1.661, 2.159, 2.215}, // n_l
        {2.143, 2.148, 1.744}, // n_n
    }};
    for (int f = 0; f < 4; ++f) {
        for (int level = 0; level < 3; ++level) {
            CHECK(near3(report.factors[f].level_sums[level], expected_sums[f][level]));
        }
    }

    // A rows
    CHECK(near3(report.factors[0].level_means[0], 0.732));
    CHECK(near3(report.factors[1].level_means[0], 0.887));
    CHECK(near3(report.factors[2].level_means[2], 0.738));
    CHECK(near3(report.factors[3].level_means[1], 0.716));

    // ranges as printed (difference of the 3-decimal means)
    CHECK(near3(report.factors[0].printed_range(), 0.164));
    CHECK(near3(report.factors[1].printed_range(), 0.406));
    CHECK(near3(report.factors[2].printed_range(), 0.184));
    CHECK(near3(report.factors[3].printed_range(), 0.135));
    // full-precision ranges drive the ranking
    CHECK(report.factors[2].range == doctest::Approx(0.184667).epsilon(1e-4));

    // importance: lambda > n_l > lr > n_n
    CHECK(report.importance == std::vector<int>{1, 2, 0, 3});

    // best levels and composed optimum
    CHECK(report.factors[0].best_level == 1);
    CHECK(report.factors[1].best_level == 1);
    CHECK(report.factors[2].best_level == 3);
    CHECK(report.factors[3].best_level == 2);
    CHECK(report.optimal_assignment.at("lr") == oat::LevelValue(0.005));
    CHECK(report.optimal_assignment.at("lambda") == oat::LevelValue(0.004));
    CHECK(report.optimal_assignment.at("n_l") == oat::LevelValue(std::int64_t{6}));
    CHECK(report.optimal_assignment.at("n_n") == oat::LevelValue(std::int64_t{64}));

    CHECK(report.best_row_index == 7);
    CHECK(report.best_row_value == doctest::Approx(0.897));
}

TEST_CASE("a constant metric yields zero ranges and declaration-order importance") {
    const oat::TrialPlan plan = rnn_plan();
    std::array<double, 9> values{};
    values.fill(0.5);
    const RangeAnalysisReport report = oat::analyze(plan, records_for(plan, values), "acc");
    for (const auto& factor : report.factors) {
        for (double sum : factor.level_sums) {
            CHECK(sum == doctest::Approx(1.5).epsilon(1e-12));
        }
        for (double mean : factor.level_means) {
            CHECK(mean == doctest::Approx(0.5).epsilon(1e-12));
        }
        CHECK(factor.range == doctest::Approx(0.0));
        CHECK(factor.best_level == 1);
    }
    CHECK(report.importance == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("the CNN case-study analysis matches the independent summation oracle") {
    const oat::TrialPlan plan =
        oat::make_plan(oat::load_config(oat_test::cnn_config_json()));
    const auto records = records_for(plan, oat_test::cnn_accuracies());
    const RangeAnalysisReport report = oat::analyze(plan, records, "acc");

    // factors 1, 2 and 4 agree with the published sums
    CHECK(near3(report.factors[0].level_sums[0], 2.253));
    CHECK(near3(report.factors[0].level_sums[1], 2.328));
    CHECK(near3(report.factors[0].level_sums[2], 2.322));
    CHECK(near3(report.factors[1].level_sums[0], 2.270));
    CHECK(near3(report.factors[1].level_sums[1], 2.305));
    CHECK(near3(report.factors[1].level_sums[2], 2.328));
    CHECK(near3(report.factors[3].level_sums[0], 2.215));
    CHECK(near3(report.factors[3].level_sums[1], 2.352));
    CHECK(near3(report.factors[3].level_sums[2], 2.336));

    // factor 3 only agrees with direct summation; the fixture's published
    // 2.993 is inconsistent with its own row data
    const auto oracle = level_sum_oracle(plan.array, oat_test::cnn_accuracies());
    for (int f = 0; f < 4; ++f) {
        for (int level = 0; level < 3; ++level) {
            CHECK(report.factors[f].level_sums[level] ==
                  doctest::Approx(oracle[f][level]).epsilon(1e-12));
        }
    }
    CHECK(near3(report.factors[2].level_sums[0], 2.286));
    CHECK(near3(report.factors[2].level_sums[1], 2.306));
    CHECK(near3(report.factors[2].level_sums[2], 2.311));
    CHECK(std::abs(report.factors[2].level_sums[0] - 2.993) > 0.5);
}

TEST_CASE("level sums partition the total") {
    const oat::TrialPlan plan = rnn_plan();
    const auto records = records_for(plan, oat_test::rnn_accuracies());
    const RangeAnalysisReport report = oat::analyze(plan, records, "acc");
    double total = 0.0;
    for (double v : report.row_values) {
        total += v;
    }
    for (const auto& factor : report.factors) {
        double sum = 0.0;
        for (double s : factor.level_sums) {
            sum += s;
        }
        CHECK(sum == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("affine rescaling preserves importance and best levels") {
    const oat::TrialPlan plan = rnn_plan();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 9> y{};
        for (auto& v : y) {
            v = static_cast<double>(rng() % 100000) / 100000.0;
        }
        std::array<double, 9> scaled{};
        const double a = 3.75;
        const double b = -1.25;
        for (int i = 0; i < 9; ++i) {
            scaled[i] = a * y[i] + b;
        }
        const auto r1 = oat::analyze(plan, records_for(plan, y), "acc");
        const auto r2 = oat::analyze(plan, records_for(plan, scaled), "acc");
        CHECK(r1.importance == r2.importance);
        for (int f = 0; f < 4; ++f) {
            CHECK(r1.factors[f].best_level == r2.factors[f].best_level);
        }
    }
}

TEST_CASE("minimizing y equals maximizing -y") {
    auto min_config = oat_test::rnn_config_json();
    min_config["objective"]["direction"] = "minimize";
    const oat::TrialPlan min_plan = oat::make_plan(oat::load_config(min_config));
    const oat::TrialPlan max_plan = rnn_plan();

    std::array<double, 9> y = oat_test::rnn_accuracies();
    std::array<double, 9> negated{};
    for (int i = 0; i < 9; ++i) {
        negated[i] = -y[i];
    }
    const auto min_report = oat::analyze(min_plan, records_for(min_plan, y), "acc");
    const auto max_report = oat::analyze(max_plan, records_for(max_plan, negated), "acc");
    for (int f = 0; f < 4; ++f) {
        CHECK(min_report.factors[f].best_level == max_report.factors[f].best_level);
    }
    CHECK(min_report.best_row_index == max_report.best_row_index);
}

TEST_CASE("additive objectives recover the brute-force optimum") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        oat::SyntheticSpec spec = oat::builtin_spec("additive-demo");
        for (auto& factor_effects : spec.effects) {
            for (auto& effect : factor_effects) {
                effect = static_cast<double>(rng() % 1000000) / 1000000.0;
            }
        }
        const oat::SyntheticObjective objective(spec);
        const oat::TrialPlan plan = rnn_plan();
        oat::RunOptions options;
        options.clock = [] { return 0.0; };
        const auto records = oat::run_plan(plan, objective, options);
        const auto report = oat::analyze(plan, records, "acc");

        // brute force over all 81 combinations
        double best = -1e300;
        oat::Assignment best_assignment;
        for (const auto& assignment : oat::full_factorial(spec.table)) {
            const double value = oat::eval_synthetic(spec, assignment, 0).at("acc");
            if (value > best) {
                best = value;
                best_assignment = assignment;
            }
        }
        CHECK(report.optimal_assignment == best_assignment);
    }
}

TEST_CASE("analysis precondition failures") {
    const oat::TrialPlan plan = rnn_plan();
    auto records = records_for(plan, oat_test::rnn_accuracies());

    SUBCASE("missing row") {
        records.pop_back();
        CHECK(oat_test::kind_of([&] { oat::analyze(plan, records, "acc"); }) ==
              ErrorKind::MissingRows);
    }
    SUBCASE("duplicate row") {
        records.push_back(records.front());
        CHECK(oat_test::kind_of([&] { oat::analyze(plan, records, "acc"); }) ==
              ErrorKind::MissingRows);
    }
    SUBCASE("failed row") {
        records[4].status = TrialRecord::Status::Failed;
        records[4].error = "ObjectiveFailure: exit 1";
        CHECK(oat_test::kind_of([&] { oat::analyze(plan, records, "acc"); }) ==
              ErrorKind::MissingRows);
    }
    SUBCASE("unknown metric") {
        CHECK(oat_test::kind_of([&] { oat::analyze(plan, records, "f1"); }) ==
              ErrorKind::UnknownMetric);
    }
}

TEST_CASE("rendering matches the published table layout") {
    const oat::TrialPlan plan = rnn_plan();
    const auto report = oat::analyze(plan, records_for(plan, oat_test::rnn_accuracies()), "acc");
    const std::string text = oat::render_report_text(plan, report);

    CHECK(text.find("2.196") != std::string::npos);
    CHECK(text.find("0.887") != std::string::npos);
    CHECK(text.find("0.184") != std::string::npos); // printed range row
    CHECK(text.find("importance: lambda > n_l > lr > n_n") != std::string::npos);
    CHECK(text.find("0.720") != std::string::npos); // fixed three decimals
    CHECK(text.find("level 3") != std::string::npos);
}

TEST_CASE("report documents round-trip") {
    const oat::TrialPlan plan = rnn_plan();
    const auto report = oat::analyze(plan, records_for(plan, oat_test::rnn_accuracies()), "acc");
    const RangeAnalysisReport reloaded = oat::report_from_json(oat::report_to_json(report));
    CHECK(reloaded == report);
}

TEST_CASE("confirmation comparison") {
    const oat::TrialPlan plan = rnn_plan();
    const auto report = oat::analyze(plan, records_for(plan, oat_test::rnn_accuracies()), "acc");

    TrialRecord confirmation;
    confirmation.plan_id = plan.plan_id;
    confirmation.row_index = 0;
    confirmation.assignment = report.optimal_assignment;
    confirmation.repetitions = {{{"acc", 0.925}}};
    confirmation.aggregated = confirmation.repetitions[0];
    confirmation.status = TrialRecord::Status::Ok;

    SUBCASE("an optimum above the best row is flagged") {
        const auto summary = oat::predicted_vs_confirmed(report, confirmation);
        CHECK(summary.confirmed == doctest::Approx(0.925));
        CHECK(summary.best_row_value == doctest::Approx(0.897));
        CHECK(summary.best_row_index == 7);
        CHECK(summary.exceeds_best_row);
        const std::string text = oat::render_confirmation_text(summary);
        CHECK(text.find("exceeds") != std::string::npos);
    }
    SUBCASE("an optimum below the best row is possible and not flagged") {
        confirmation.repetitions = {{{"acc", 0.85}}};
        confirmation.aggregated = confirmation.repetitions[0];
        const auto summary = oat::predicted_vs_confirmed(report, confirmation);
        CHECK_FALSE(summary.exceeds_best_row);
    }
    SUBCASE("a confirmation at the wrong assignment is rejected") {
        confirmation.assignment["n_n"] = oat::LevelValue(std::int64_t{96});
        CHECK(oat_test::kind_of([&] { oat::predicted_vs_confirmed(report, confirmation); }) ==
              ErrorKind::AssignmentMismatch);
    }
}
