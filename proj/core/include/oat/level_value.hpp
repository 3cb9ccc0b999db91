#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>

namespace oat {

/// One candidate value of a factor: a real, an integer, an integer pair, or
/// a string label. Values are opaque to planning (only level indices matter)
/// and round-trip losslessly through the JSON config format; 5 and 5.0 are
/// distinct values.
class LevelValue {
public:
    using IntPair = std::pair<std::int64_t, std::int64_t>;

    enum class Kind { Integer, Real, Pair, Label };

    LevelValue() : value_(std::int64_t{0}) {}
    explicit LevelValue(std::int64_t v) : value_(v) {}
    explicit LevelValue(double v) : value_(v) {}
    explicit LevelValue(IntPair v) : value_(v) {}
    explicit LevelValue(std::string v) : value_(std::move(v)) {}

    Kind kind() const { return static_cast<Kind>(value_.index()); }

    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    double as_real() const { return std::get<double>(value_); }
    const IntPair& as_pair() const { return std::get<IntPair>(value_); }
    const std::string& as_label() const { return std::get<std::string>(value_); }

    static LevelValue from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    /// Compact text for report tables, e.g. 0.005, 5, [1,6], adam.
    std::string display() const;

    bool operator==(const LevelValue&) const = default;
    auto operator<=>(const LevelValue&) const = default;

private:
    std::variant<std::int64_t, double, IntPair, std::string> value_;
};

/// Concrete hyperparameter setting: factor name to level value.
using Assignment = std::map<std::string, LevelValue>;

nlohmann::json assignment_to_json(const Assignment& assignment);
Assignment assignment_from_json(const nlohmann::json& j);

} // namespace oat
