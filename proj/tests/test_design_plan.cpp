#include "oat/errors.hpp"
#include "oat/trial_plan.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <map>

using oat::ErrorKind;
using oat::LevelValue;

TEST_CASE("level values round-trip losslessly through JSON") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        LevelValue value;
        switch (rng() % 4) {
        case 0:
            value = LevelValue(static_cast<std::int64_t>(rng() % 10000) - 5000);
            break;
        case 1:
            value = LevelValue(static_cast<double>(rng() % 100000) / 997.0);
            break;
        case 2:
            value = LevelValue(LevelValue::IntPair{static_cast<std::int64_t>(rng() % 100),
                                                   static_cast<std::int64_t>(rng() % 100)});
            break;
        default:
            value = LevelValue("label-" + std::to_string(rng() % 1000));
            break;
        }
        CHECK(LevelValue::from_json(value.to_json()) == value);
        // through text as the config file would store it
        CHECK(LevelValue::from_json(nlohmann::json::parse(value.to_json().dump())) == value);
    }
}

TEST_CASE("integer and real level values are distinct") {
    CHECK(LevelValue(std::int64_t{5}) != LevelValue(5.0));
    CHECK(LevelValue::from_json(nlohmann::json::parse("5")).kind() ==
          LevelValue::Kind::Integer);
    CHECK(LevelValue::from_json(nlohmann::json::parse("5.0")).kind() ==
          LevelValue::Kind::Real);
}

TEST_CASE("the case-study table parses with four 3-level factors") {
    const oat::FactorLevelTable table = oat::load_table(oat_test::rnn_config_json());
    CHECK(table.factor_count() == 4);
    CHECK(table.levels_per_factor() == 3);
    CHECK(table.factors[0].name == "lr");
    CHECK(table.factors[0].levels[0] == LevelValue(0.005));
    CHECK(table.factors[2].levels[2] == LevelValue(std::int64_t{6}));
    CHECK(table.objective_direction == oat::Direction::Maximize);
}

TEST_CASE("a single two-level factor is a valid table") {
    nlohmann::json config = {
        {"factors", {{{"name", "flag"}, {"levels", {0, 1}}}}},
        {"objective", {{"metric", "acc"}, {"direction", "maximize"}}}};
    const oat::FactorLevelTable table = oat::load_table(config);
    CHECK(table.factor_count() == 1);
    CHECK(table.levels_per_factor() == 2);
}

TEST_CASE("table validation failures") {
    auto base = oat_test::rnn_config_json();

    SUBCASE("unequal level counts") {
        base["factors"][1]["levels"] = {0.004, 0.008};
        CHECK(oat_test::kind_of([&] { oat::load_table(base); }) ==
              ErrorKind::UnequalLevelCounts);
    }
    SUBCASE("duplicate factor names") {
        base["factors"][1]["name"] = "lr";
        CHECK(oat_test::kind_of([&] { oat::load_table(base); }) ==
              ErrorKind::DuplicateFactorName);
    }
    SUBCASE("empty factor name") {
        base["factors"][0]["name"] = "";
        CHECK(oat_test::kind_of([&] { oat::load_table(base); }) == ErrorKind::SchemaError);
    }
    SUBCASE("duplicate level values") {
        base["factors"][0]["levels"] = {0.005, 0.005, 0.015};
        CHECK(oat_test::kind_of([&] { oat::load_table(base); }) == ErrorKind::SchemaError);
    }
    SUBCASE("missing schema version") {
        base.erase("schema_version");
        CHECK(oat_test::kind_of([&] { oat::load_config(base); }) == ErrorKind::SchemaError);
    }
}

TEST_CASE("the plan binds array rows to concrete values") {
    const oat::TrialPlan plan = oat::make_plan(oat::load_config(oat_test::rnn_config_json()));
    REQUIRE(plan.assignments.size() == 9);
    CHECK(plan.array.rows == 9);

    const oat::Assignment& row4 = plan.assignments[3];
    CHECK(row4.at("lr") == LevelValue(0.01));
    CHECK(row4.at("lambda") == LevelValue(0.004));
    CHECK(row4.at("n_l") == LevelValue(std::int64_t{5}));
    CHECK(row4.at("n_n") == LevelValue(std::int64_t{96}));
}

TEST_CASE("the companion table's row 6 matches the published design") {
    const oat::TrialPlan plan = oat::make_plan(oat::load_config(oat_test::cnn_config_json()));
    const oat::Assignment& row6 = plan.assignments[5];
    CHECK(row6.at("lr") == LevelValue(0.003));
    CHECK(row6.at("filter") == LevelValue(LevelValue::IntPair{1, 6}));
    CHECK(row6.at("n_l") == LevelValue(std::int64_t{1}));
    CHECK(row6.at("n_n") == LevelValue(std::int64_t{128}));
}

TEST_CASE("a single 3-level factor cycles each level three times") {
    nlohmann::json config = {
        {"schema_version", 1},
        {"factors", {{{"name", "x"}, {"levels", {10, 20, 30}}}}},
        {"objective", {{"metric", "acc"}, {"direction", "maximize"}}}};
    const oat::TrialPlan plan = oat::make_plan(oat::load_config(config));
    REQUIRE(plan.assignments.size() == 9);
    std::map<LevelValue, int> counts;
    for (const auto& assignment : plan.assignments) {
        ++counts[assignment.at("x")];
    }
    for (const auto& [value, count] : counts) {
        (void)value;
        CHECK(count == 3);
    }
}

TEST_CASE("every factor-level value appears in exactly N/h assignments") {
    const oat::TrialPlan plan = oat::make_plan(oat::load_config(oat_test::cnn_config_json()));
    const int expected = plan.array.rows / plan.array.levels;
    for (const auto& factor : plan.table().factors) {
        for (const auto& level : factor.levels) {
            int count = 0;
            for (const auto& assignment : plan.assignments) {
                if (assignment.at(factor.name) == level) {
                    ++count;
                }
            }
            CHECK(count == expected);
        }
    }
}

TEST_CASE("assignments reproduce the underlying array exactly") {
    const oat::TrialPlan plan = oat::make_plan(oat::load_config(oat_test::rnn_config_json()));
    for (int r = 0; r < plan.array.rows; ++r) {
        for (int f = 0; f < plan.array.factors; ++f) {
            const oat::FactorSpec& factor = plan.table().factors[static_cast<std::size_t>(f)];
            const int level =
                factor.level_index(plan.assignments[static_cast<std::size_t>(r)].at(factor.name));
            CHECK(level == plan.array.at(r, f));
        }
    }
}

TEST_CASE("plan ids are stable across formatting and key order") {
    const oat::TrialPlan a = oat::make_plan(oat::load_config(oat_test::rnn_config_json()));

    // Same document, shuffled keys and different whitespace.
    const std::string shuffled = R"({
        "repetitions": 1,
        "objective": {"direction": "maximize", "metric": "acc"},
        "schema_version": 1,
        "factors": [
            {"levels": [0.005, 0.01, 0.015], "name": "lr"},
            {"levels": [0.004, 0.008, 0.012], "name": "lambda"},
            {"name": "n_l", "levels": [4, 5, 6]},
            {"name": "n_n", "levels": [32, 64, 96]}
        ]
    })";
    const oat::TrialPlan b = oat::make_plan(oat::load_config(nlohmann::json::parse(shuffled)));
    CHECK(a.plan_id == b.plan_id);

    auto changed = oat_test::rnn_config_json();
    changed["repetitions"] = 5;
    const oat::TrialPlan c = oat::make_plan(oat::load_config(changed));
    CHECK(a.plan_id != c.plan_id);
}

TEST_CASE("plan documents survive a file round trip") {
    oat_test::TempDir dir("plan");
    const oat::TrialPlan plan = oat::make_plan(oat::load_config(oat_test::rnn_config_json()));
    oat::write_plan_file(plan, dir.path() / "plan.json");
    const oat::TrialPlan loaded = oat::load_plan_file(dir.path() / "plan.json");
    CHECK(loaded.plan_id == plan.plan_id);
    CHECK(loaded.array.entries == plan.array.entries);
    CHECK(loaded.assignments == plan.assignments);
}

TEST_CASE("unsupported level counts fall through catalog to an error") {
    nlohmann::json config = {
        {"schema_version", 1},
        {"factors",
         {{{"name", "a"}, {"levels", {1, 2, 3, 4, 5, 6}}},
          {{"name", "b"}, {"levels", {1, 2, 3, 4, 5, 6}}}}},
        {"objective", {{"metric", "acc"}, {"direction", "maximize"}}}};
    CHECK(oat_test::kind_of([&] { oat::make_plan(oat::load_config(config)); }) ==
          ErrorKind::UnsupportedLevels);
}

TEST_CASE("savings fractions") {
    CHECK(oat::savings_fraction(9, 3, 3) == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(oat::savings_fraction(9, 3, 4) == doctest::Approx(0.8889).epsilon(1e-4));
    CHECK(oat::savings_fraction(27, 3, 3) == doctest::Approx(0.0));
    CHECK(oat_test::kind_of([] { oat::savings_fraction(82, 3, 4); }) ==
          ErrorKind::InvalidCount);
}
