#pragma once

#include "oat/level_value.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace oat {

enum class Direction { Maximize, Minimize };

Direction direction_from_string(const std::string& name);
const char* direction_name(Direction direction);

/// A tunable hyperparameter and its candidate values. Level values within a
/// factor are pairwise distinct.
struct FactorSpec {
    std::string name;
    std::vector<LevelValue> levels;

    /// 1-based index of the given value, or 0 when absent.
    int level_index(const LevelValue& value) const;
};

/// The factor-level table: every factor carries the same number of levels h.
struct FactorLevelTable {
    std::vector<FactorSpec> factors;
    Direction objective_direction = Direction::Maximize;

    int factor_count() const { return static_cast<int>(factors.size()); }
    int levels_per_factor() const {
        return factors.empty() ? 0 : static_cast<int>(factors.front().levels.size());
    }
    /// Index of the named factor, or -1.
    int factor_index(const std::string& name) const;

    /// h^k as a double (exact for desk-scale tables).
    double full_factorial_size() const;
};

/// Parses the `factors` + `objective` portion of a config document and
/// enforces the table invariants: unique non-empty factor names, equal level
/// counts h >= 2, distinct level values per factor.
FactorLevelTable load_table(const nlohmann::json& config);

nlohmann::json table_to_json(const FactorLevelTable& table);

} // namespace oat
