#include "oat/metrics.hpp"

#include "oat/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oat {

Aggregator aggregator_from_string(const std::string& name) {
    if (name == "mean") {
        return Aggregator::Mean;
    }
    if (name == "median") {
        return Aggregator::Median;
    }
    throw Error(ErrorKind::SchemaError, "unknown aggregator '" + name + "' (mean or median)");
}

const char* aggregator_name(Aggregator aggregator) {
    return aggregator == Aggregator::Mean ? "mean" : "median";
}

MetricSet aggregate_metrics(const std::vector<MetricSet>& repetitions, Aggregator aggregator) {
    if (repetitions.empty()) {
        throw Error(ErrorKind::InvalidCount, "cannot aggregate zero repetitions");
    }
    for (const auto& rep : repetitions) {
        if (rep.size() != repetitions.front().size() ||
            !std::equal(rep.begin(), rep.end(), repetitions.front().begin(),
                        [](const auto& a, const auto& b) { return a.first == b.first; })) {
            throw Error(ErrorKind::ObjectiveProtocolError,
                        "repetitions report different metric names");
        }
    }
    MetricSet out;
    for (const auto& [name, first_value] : repetitions.front()) {
        (void)first_value;
        std::vector<double> values;
        values.reserve(repetitions.size());
        for (const auto& rep : repetitions) {
            values.push_back(rep.at(name));
        }
        if (aggregator == Aggregator::Mean) {
            double sum = 0.0;
            for (double v : values) {
                sum += v;
            }
            out[name] = sum / static_cast<double>(values.size());
        } else {
            std::sort(values.begin(), values.end());
            const std::size_t mid = values.size() / 2;
            out[name] = values.size() % 2 == 1 ? values[mid]
                                               : (values[mid - 1] + values[mid]) / 2.0;
        }
    }
    return out;
}

nlohmann::json metric_set_to_json(const MetricSet& metrics) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : metrics) {
        j[name] = value;
    }
    return j;
}

MetricSet metric_set_from_json(const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object()) {
        throw Error(ErrorKind::ObjectiveProtocolError,
                    origin + ": metrics must be a JSON object, got " + j.dump());
    }
    MetricSet metrics;
    for (const auto& [name, value] : j.items()) {
        if (!value.is_number()) {
            throw Error(ErrorKind::ObjectiveProtocolError,
                        origin + ": metric '" + name + "' is not a number: " + value.dump());
        }
        const double v = value.get<double>();
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::ObjectiveProtocolError,
                        origin + ": metric '" + name + "' is not finite");
        }
        metrics[name] = v;
    }
    return metrics;
}

} // namespace oat
