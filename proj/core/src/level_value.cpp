#include "oat/level_value.hpp"

#include "oat/errors.hpp"

namespace oat {

LevelValue LevelValue::from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) {
        return LevelValue(j.get<std::int64_t>());
    }
    if (j.is_number_float()) {
        return LevelValue(j.get<double>());
    }
    if (j.is_string()) {
        return LevelValue(j.get<std::string>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        return LevelValue(IntPair{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()});
    }
    throw Error(ErrorKind::SchemaError,
                "level value must be a number, a string, or a pair of integers, got " + j.dump());
}

nlohmann::json LevelValue::to_json() const {
    switch (kind()) {
    case Kind::Integer:
        return as_integer();
    case Kind::Real:
        return as_real();
    case Kind::Pair:
        return nlohmann::json::array({as_pair().first, as_pair().second});
    case Kind::Label:
        return as_label();
    }
    return nullptr;
}

std::string LevelValue::display() const {
    if (kind() == Kind::Label) {
        return as_label();
    }
    return to_json().dump();
}

nlohmann::json assignment_to_json(const Assignment& assignment) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : assignment) {
        j[name] = value.to_json();
    }
    return j;
}

Assignment assignment_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::SchemaError, "assignment must be a JSON object");
    }
    Assignment assignment;
    for (const auto& [name, value] : j.items()) {
        assignment.emplace(name, LevelValue::from_json(value));
    }
    return assignment;
}

} // namespace oat
