#include "oat/trial_plan.hpp"

#include "oat/catalog.hpp"
#include "oat/errors.hpp"
#include "oat/galois_field.hpp"
#include "oat/hash.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace oat {

namespace {

constexpr int kSchemaVersion = 1;

// Column prefix of a catalog array; a strength-2 array stays strength 2
// under column removal.
OrthogonalArray catalog_fallback(int levels, int factors) {
    std::optional<OrthogonalArray> best;
    for (const auto& name : catalog_names()) {
        OrthogonalArray array = catalog_lookup(name);
        if (array.levels != levels || array.factors < factors) {
            continue;
        }
        if (!best || array.rows < best->rows) {
            best = std::move(array);
        }
    }
    if (!best) {
        throw Error(ErrorKind::UnsupportedLevels,
                    std::to_string(levels) +
                        " levels: not a prime power and no catalog entry applies");
    }
    best->factors = factors;
    for (auto& row : best->entries) {
        row.resize(static_cast<std::size_t>(factors));
    }
    return std::move(*best);
}

} // namespace

TunerConfig load_config(const nlohmann::json& document) {
    if (!document.is_object()) {
        throw Error(ErrorKind::SchemaError, "config must be a JSON object");
    }
    if (!document.contains("schema_version") || !document["schema_version"].is_number_integer() ||
        document["schema_version"].get<int>() != kSchemaVersion) {
        throw Error(ErrorKind::SchemaError, "config needs schema_version: 1");
    }

    TunerConfig config;
    config.table = load_table(document);

    if (!document.contains("objective") || !document["objective"].is_object() ||
        !document["objective"].contains("metric") ||
        !document["objective"]["metric"].is_string()) {
        throw Error(ErrorKind::SchemaError, "config needs objective.metric");
    }
    config.metric = document["objective"]["metric"].get<std::string>();
    if (config.metric.empty()) {
        throw Error(ErrorKind::SchemaError, "objective.metric must be non-empty");
    }

    if (document.contains("repetitions")) {
        if (!document["repetitions"].is_number_integer() ||
            document["repetitions"].get<int>() < 1) {
            throw Error(ErrorKind::SchemaError, "repetitions must be an integer >= 1");
        }
        config.repetitions = document["repetitions"].get<int>();
    }
    if (document.contains("command")) {
        if (!document["command"].is_array() || document["command"].empty()) {
            throw Error(ErrorKind::SchemaError, "command must be a non-empty array of strings");
        }
        for (const auto& arg : document["command"]) {
            if (!arg.is_string()) {
                throw Error(ErrorKind::SchemaError, "command entries must be strings");
            }
            config.command.push_back(arg.get<std::string>());
        }
    }
    if (document.contains("env")) {
        if (!document["env"].is_object()) {
            throw Error(ErrorKind::SchemaError, "env must be an object of string values");
        }
        for (const auto& [key, value] : document["env"].items()) {
            if (!value.is_string()) {
                throw Error(ErrorKind::SchemaError, "env values must be strings");
            }
            config.env[key] = value.get<std::string>();
        }
    }
    if (document.contains("timeout_seconds")) {
        if (!document["timeout_seconds"].is_number() ||
            document["timeout_seconds"].get<double>() < 0.0) {
            throw Error(ErrorKind::SchemaError, "timeout_seconds must be a number >= 0");
        }
        config.timeout_seconds = document["timeout_seconds"].get<double>();
    }
    if (document.contains("aggregator")) {
        if (!document["aggregator"].is_string()) {
            throw Error(ErrorKind::SchemaError, "aggregator must be a string");
        }
        config.aggregator = aggregator_from_string(document["aggregator"].get<std::string>());
    }

    config.canonical = document;
    return config;
}

TunerConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read config " + path.string());
    }
    nlohmann::json document;
    try {
        in >> document;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError, path.string() + ": " + e.what());
    }
    return load_config(document);
}

TrialPlan make_plan(const TunerConfig& config) {
    const int h = config.table.levels_per_factor();
    const int k = config.table.factor_count();

    TrialPlan plan;
    plan.config = config;
    if (GaloisField::is_prime_power(h)) {
        plan.array = construct_oa(h, k);
    } else {
        plan.array = catalog_fallback(h, k);
    }

    plan.assignments.reserve(static_cast<std::size_t>(plan.array.rows));
    for (int r = 0; r < plan.array.rows; ++r) {
        Assignment assignment;
        for (int f = 0; f < k; ++f) {
            const FactorSpec& factor = config.table.factors[static_cast<std::size_t>(f)];
            const int level = plan.array.at(r, f);
            assignment.emplace(factor.name,
                               factor.levels[static_cast<std::size_t>(level - 1)]);
        }
        plan.assignments.push_back(std::move(assignment));
    }

    plan.plan_id = sha256_hex(config.canonical.dump() + "\n" + format_oa_text(plan.array));
    return plan;
}

double savings_fraction(long runs, int levels, int factors) {
    if (runs < 1 || levels < 2 || factors < 1) {
        throw Error(ErrorKind::InvalidCount, "need runs >= 1, levels >= 2, factors >= 1");
    }
    // h^k without overflow: saturate once past any plausible run count.
    double full = 1.0;
    for (int i = 0; i < factors; ++i) {
        full *= static_cast<double>(levels);
        if (full > 1e18) {
            break;
        }
    }
    if (static_cast<double>(runs) > full) {
        throw Error(ErrorKind::InvalidCount,
                    std::to_string(runs) + " runs exceeds the full factorial of " +
                        std::to_string(levels) + "^" + std::to_string(factors));
    }
    return 1.0 - static_cast<double>(runs) / full;
}

nlohmann::json plan_to_json(const TrialPlan& plan) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : plan.array.entries) {
        rows.push_back(row);
    }
    nlohmann::json assignments = nlohmann::json::array();
    for (const auto& assignment : plan.assignments) {
        assignments.push_back(assignment_to_json(assignment));
    }
    return {{"schema_version", kSchemaVersion},
            {"plan_id", plan.plan_id},
            {"config", plan.config.canonical},
            {"array",
             {{"levels", plan.array.levels},
              {"factors", plan.array.factors},
              {"rows", plan.array.rows},
              {"strength", plan.array.strength},
              {"index_lambda", plan.array.index_lambda},
              {"entries", rows}}},
            {"assignments", assignments}};
}

TrialPlan plan_from_json(const nlohmann::json& document) {
    if (!document.is_object() || !document.contains("config") ||
        !document.contains("plan_id")) {
        throw Error(ErrorKind::SchemaError, "plan document needs config and plan_id");
    }
    TrialPlan plan = make_plan(load_config(document["config"]));
    if (plan.plan_id != document["plan_id"].get<std::string>()) {
        throw Error(ErrorKind::PlanMismatch,
                    "stored plan_id " + document["plan_id"].get<std::string>() +
                        " does not match the plan derived from its config (" + plan.plan_id +
                        ")");
    }
    return plan;
}

void write_plan_file(const TrialPlan& plan, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << plan_to_json(plan).dump(2) << '\n';
}

TrialPlan load_plan_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read plan " + path.string());
    }
    nlohmann::json document;
    try {
        in >> document;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError, path.string() + ": " + e.what());
    }
    return plan_from_json(document);
}

} // namespace oat
