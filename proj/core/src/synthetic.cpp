#include "oat/synthetic.hpp"

#include "oat/errors.hpp"
#include "oat/orthogonal_array.hpp"
#include "oat/rng.hpp"

#include <algorithm>

namespace oat {

namespace {

const char* kind_name(SyntheticSpec::Kind kind) {
    switch (kind) {
    case SyntheticSpec::Kind::Additive: return "additive";
    case SyntheticSpec::Kind::AdditiveInteraction: return "additive-plus-interaction";
    case SyntheticSpec::Kind::Noisy: return "noisy";
    }
    return "additive";
}

SyntheticSpec::Kind kind_from_string(const std::string& name) {
    if (name == "additive") {
        return SyntheticSpec::Kind::Additive;
    }
    if (name == "additive-plus-interaction") {
        return SyntheticSpec::Kind::AdditiveInteraction;
    }
    if (name == "noisy") {
        return SyntheticSpec::Kind::Noisy;
    }
    throw Error(ErrorKind::SchemaError, "unknown synthetic kind '" + name + "'");
}

FactorLevelTable rnn_case_table() {
    nlohmann::json config = {
        {"factors",
         {{{"name", "lr"}, {"levels", {0.005, 0.01, 0.015}}},
          {{"name", "lambda"}, {"levels", {0.004, 0.008, 0.012}}},
          {{"name", "n_l"}, {"levels", {4, 5, 6}}},
          {{"name", "n_n"}, {"levels", {32, 64, 96}}}}},
        {"objective", {{"metric", "acc"}, {"direction", "maximize"}}}};
    return load_table(config);
}

FactorLevelTable cnn_case_table() {
    nlohmann::json config = {
        {"factors",
         {{{"name", "lr"}, {"levels", {0.001, 0.003, 0.005}}},
          {{"name", "filter"}, {"levels", {{1, 2}, {1, 4}, {1, 6}}}},
          {{"name", "n_l"}, {"levels", {1, 2, 3}}},
          {{"name", "n_n"}, {"levels", {64, 128, 192}}}}},
        {"objective", {{"metric", "acc"}, {"direction", "maximize"}}}};
    return load_table(config);
}

// Exact lookups on the 9 design rows, additive main-effects fit elsewhere.
SyntheticSpec reference_spec_from(FactorLevelTable table,
                                  const std::vector<double>& measured) {
    const OrthogonalArray array = construct_oa(3, 4);

    SyntheticSpec spec;
    spec.kind = SyntheticSpec::Kind::Additive;
    spec.metric = "acc";
    spec.table = std::move(table);

    double grand_total = 0.0;
    for (double value : measured) {
        grand_total += value;
    }
    const double grand_mean = grand_total / static_cast<double>(array.rows);

    // Fitted value at levels (i_1..i_k) is mean + sum_f (A_f[i_f] - mean);
    // distributing the mean across factors keeps the spec purely additive.
    spec.effects.assign(4, std::vector<double>(3, 0.0));
    for (int f = 0; f < 4; ++f) {
        for (int level = 1; level <= 3; ++level) {
            double sum = 0.0;
            for (int r = 0; r < array.rows; ++r) {
                if (array.at(r, f) == level) {
                    sum += measured[static_cast<std::size_t>(r)];
                }
            }
            spec.effects[static_cast<std::size_t>(f)][static_cast<std::size_t>(level - 1)] =
                sum / 3.0 - grand_mean * 3.0 / 4.0;
        }
    }

    for (int r = 0; r < array.rows; ++r) {
        std::vector<int> levels(4);
        for (int f = 0; f < 4; ++f) {
            levels[static_cast<std::size_t>(f)] = array.at(r, f);
        }
        spec.exact_rows.emplace(std::move(levels), measured[static_cast<std::size_t>(r)]);
    }
    return spec;
}

} // namespace

double SyntheticSpec::additive_maximum() const {
    double total = 0.0;
    for (const auto& factor_effects : effects) {
        total += *std::max_element(factor_effects.begin(), factor_effects.end());
    }
    return total;
}

std::vector<int> SyntheticSpec::additive_argmax() const {
    std::vector<int> levels;
    levels.reserve(effects.size());
    for (const auto& factor_effects : effects) {
        const auto it = std::max_element(factor_effects.begin(), factor_effects.end());
        levels.push_back(static_cast<int>(it - factor_effects.begin()) + 1);
    }
    return levels;
}

MetricSet eval_synthetic(const SyntheticSpec& spec, const Assignment& assignment,
                         std::uint64_t seed) {
    const int k = spec.table.factor_count();
    if (static_cast<int>(spec.effects.size()) != k) {
        throw Error(ErrorKind::SchemaError, "effects table does not cover every factor");
    }

    std::vector<int> levels(static_cast<std::size_t>(k), 0);
    for (int f = 0; f < k; ++f) {
        const FactorSpec& factor = spec.table.factors[static_cast<std::size_t>(f)];
        const auto it = assignment.find(factor.name);
        if (it == assignment.end()) {
            throw Error(ErrorKind::UnknownLevel,
                        "assignment lacks factor '" + factor.name + "'");
        }
        const int level = factor.level_index(it->second);
        if (level == 0) {
            throw Error(ErrorKind::UnknownLevel,
                        it->second.display() + " is not a level of factor '" + factor.name +
                            "'");
        }
        if (static_cast<int>(spec.effects[static_cast<std::size_t>(f)].size()) < level) {
            throw Error(ErrorKind::SchemaError,
                        "effects table misses level " + std::to_string(level) + " of '" +
                            factor.name + "'");
        }
        levels[static_cast<std::size_t>(f)] = level;
    }

    double value = 0.0;
    const auto exact = spec.exact_rows.find(levels);
    if (exact != spec.exact_rows.end()) {
        value = exact->second;
    } else {
        for (int f = 0; f < k; ++f) {
            value += spec.effects[static_cast<std::size_t>(f)]
                                 [static_cast<std::size_t>(levels[static_cast<std::size_t>(f)] - 1)];
        }
        if (spec.kind == SyntheticSpec::Kind::AdditiveInteraction) {
            for (const auto& term : spec.interactions) {
                const int fa = spec.table.factor_index(term.factor_a);
                const int fb = spec.table.factor_index(term.factor_b);
                if (fa < 0 || fb < 0) {
                    throw Error(ErrorKind::SchemaError,
                                "interaction references unknown factor");
                }
                if (levels[static_cast<std::size_t>(fa)] == term.level_a &&
                    levels[static_cast<std::size_t>(fb)] == term.level_b) {
                    value += term.bonus;
                }
            }
        }
    }
    if (spec.kind == SyntheticSpec::Kind::Noisy && spec.noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        value += spec.noise_sigma * standard_normal(rng);
    }
    return {{spec.metric, value}};
}

SyntheticSpec reference_rnn_spec() {
    return reference_spec_from(rnn_case_table(), {0.875, 0.8, 0.521, 0.888, 0.797, 0.451,
                                                  0.897, 0.335, 0.471});
}

SyntheticSpec reference_cnn_spec() {
    return reference_spec_from(cnn_case_table(), {0.707, 0.771, 0.775, 0.779, 0.752, 0.797,
                                                  0.784, 0.782, 0.756});
}

SyntheticSpec builtin_spec(const std::string& name) {
    if (name == "rnn-reference") {
        return reference_rnn_spec();
    }
    if (name == "cnn-reference") {
        return reference_cnn_spec();
    }
    if (name == "additive-demo") {
        SyntheticSpec spec;
        spec.kind = SyntheticSpec::Kind::Additive;
        spec.metric = "acc";
        spec.table = rnn_case_table();
        spec.effects = {{0.22, 0.20, 0.15},
                        {0.25, 0.18, 0.12},
                        {0.14, 0.19, 0.21},
                        {0.17, 0.19, 0.13}};
        return spec;
    }
    throw Error(ErrorKind::SchemaError, "unknown builtin synthetic spec '" + name + "'");
}

std::vector<std::string> builtin_spec_names() {
    return {"additive-demo", "cnn-reference", "rnn-reference"};
}

nlohmann::json synthetic_spec_to_json(const SyntheticSpec& spec) {
    nlohmann::json interactions = nlohmann::json::array();
    for (const auto& term : spec.interactions) {
        interactions.push_back({{"factor_a", term.factor_a},
                                {"factor_b", term.factor_b},
                                {"level_a", term.level_a},
                                {"level_b", term.level_b},
                                {"bonus", term.bonus}});
    }
    nlohmann::json exact = nlohmann::json::array();
    for (const auto& [levels, value] : spec.exact_rows) {
        exact.push_back({{"levels", levels}, {"value", value}});
    }
    nlohmann::json document = table_to_json(spec.table);
    document["schema_version"] = 1;
    document["kind"] = kind_name(spec.kind);
    document["metric"] = spec.metric;
    document["effects"] = spec.effects;
    document["interactions"] = interactions;
    document["noise_sigma"] = spec.noise_sigma;
    document["exact_rows"] = exact;
    return document;
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& document) {
    SyntheticSpec spec;
    try {
        spec.kind = kind_from_string(document.at("kind").get<std::string>());
        spec.metric = document.value("metric", std::string("acc"));
        spec.table = load_table(document);
        spec.effects = document.at("effects").get<std::vector<std::vector<double>>>();
        if (document.contains("interactions")) {
            for (const auto& term_json : document["interactions"]) {
                InteractionTerm term;
                term.factor_a = term_json.at("factor_a").get<std::string>();
                term.factor_b = term_json.at("factor_b").get<std::string>();
                term.level_a = term_json.at("level_a").get<int>();
                term.level_b = term_json.at("level_b").get<int>();
                term.bonus = term_json.at("bonus").get<double>();
                spec.interactions.push_back(std::move(term));
            }
        }
        spec.noise_sigma = document.value("noise_sigma", 0.0);
        if (document.contains("exact_rows")) {
            for (const auto& row_json : document["exact_rows"]) {
                spec.exact_rows.emplace(row_json.at("levels").get<std::vector<int>>(),
                                        row_json.at("value").get<double>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError,
                    std::string("malformed synthetic spec: ") + e.what());
    }
    if (static_cast<int>(spec.effects.size()) != spec.table.factor_count()) {
        throw Error(ErrorKind::SchemaError, "effects table does not cover every factor");
    }
    for (std::size_t f = 0; f < spec.effects.size(); ++f) {
        if (static_cast<int>(spec.effects[f].size()) != spec.table.levels_per_factor()) {
            throw Error(ErrorKind::SchemaError,
                        "effects for factor '" + spec.table.factors[f].name +
                            "' do not cover every level");
        }
    }
    return spec;
}

} // namespace oat
