#include "oat/factor_table.hpp"

#include "oat/errors.hpp"

#include <cmath>
#include <set>

namespace oat {

Direction direction_from_string(const std::string& name) {
    if (name == "maximize") {
        return Direction::Maximize;
    }
    if (name == "minimize") {
        return Direction::Minimize;
    }
    throw Error(ErrorKind::SchemaError,
                "objective direction must be maximize or minimize, got '" + name + "'");
}

const char* direction_name(Direction direction) {
    return direction == Direction::Maximize ? "maximize" : "minimize";
}

int FactorSpec::level_index(const LevelValue& value) const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] == value) {
            return static_cast<int>(i) + 1;
        }
    }
    return 0;
}

int FactorLevelTable::factor_index(const std::string& name) const {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].name == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

double FactorLevelTable::full_factorial_size() const {
    return std::pow(static_cast<double>(levels_per_factor()),
                    static_cast<double>(factor_count()));
}

FactorLevelTable load_table(const nlohmann::json& config) {
    if (!config.is_object()) {
        throw Error(ErrorKind::SchemaError, "config must be a JSON object");
    }
    if (!config.contains("factors") || !config["factors"].is_array() ||
        config["factors"].empty()) {
        throw Error(ErrorKind::SchemaError, "config needs a non-empty 'factors' array");
    }

    FactorLevelTable table;
    if (config.contains("objective")) {
        const auto& objective = config["objective"];
        if (!objective.is_object()) {
            throw Error(ErrorKind::SchemaError, "'objective' must be an object");
        }
        if (objective.contains("direction")) {
            table.objective_direction =
                direction_from_string(objective["direction"].get<std::string>());
        }
    }

    std::set<std::string> seen;
    for (const auto& factor_json : config["factors"]) {
        if (!factor_json.is_object() || !factor_json.contains("name") ||
            !factor_json["name"].is_string() || !factor_json.contains("levels") ||
            !factor_json["levels"].is_array()) {
            throw Error(ErrorKind::SchemaError,
                        "each factor needs a string 'name' and a 'levels' array");
        }
        FactorSpec factor;
        factor.name = factor_json["name"].get<std::string>();
        if (factor.name.empty()) {
            throw Error(ErrorKind::SchemaError, "factor names must be non-empty");
        }
        if (!seen.insert(factor.name).second) {
            throw Error(ErrorKind::DuplicateFactorName,
                        "factor '" + factor.name + "' appears twice");
        }
        for (const auto& level_json : factor_json["levels"]) {
            factor.levels.push_back(LevelValue::from_json(level_json));
        }
        if (factor.levels.size() < 2) {
            throw Error(ErrorKind::SchemaError,
                        "factor '" + factor.name + "' needs at least 2 levels");
        }
        for (std::size_t i = 0; i < factor.levels.size(); ++i) {
            for (std::size_t j = i + 1; j < factor.levels.size(); ++j) {
                if (factor.levels[i] == factor.levels[j]) {
                    throw Error(ErrorKind::SchemaError,
                                "factor '" + factor.name + "' has duplicate level " +
                                    factor.levels[i].display());
                }
            }
        }
        table.factors.push_back(std::move(factor));
    }

    const std::size_t h = table.factors.front().levels.size();
    for (const auto& factor : table.factors) {
        if (factor.levels.size() != h) {
            throw Error(ErrorKind::UnequalLevelCounts,
                        "factor '" + factor.name + "' has " +
                            std::to_string(factor.levels.size()) + " levels, expected " +
                            std::to_string(h));
        }
    }
    return table;
}

nlohmann::json table_to_json(const FactorLevelTable& table) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& factor : table.factors) {
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& level : factor.levels) {
            levels.push_back(level.to_json());
        }
        factors.push_back({{"name", factor.name}, {"levels", levels}});
    }
    return {{"factors", factors},
            {"objective", {{"direction", direction_name(table.objective_direction)}}}};
}

} // namespace oat
