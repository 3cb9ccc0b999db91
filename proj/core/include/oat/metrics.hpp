#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace oat {

/// Measured metrics of one objective evaluation, e.g. {acc, prec, f1}.
/// All values are finite.
using MetricSet = std::map<std::string, double>;

enum class Aggregator { Mean, Median };

Aggregator aggregator_from_string(const std::string& name);
const char* aggregator_name(Aggregator aggregator);

/// Combines repetition metrics into one set. All repetitions must share the
/// same metric names; the mean is the default used everywhere, the median is
/// an opt-in alternative.
MetricSet aggregate_metrics(const std::vector<MetricSet>& repetitions, Aggregator aggregator);

nlohmann::json metric_set_to_json(const MetricSet& metrics);

/// Parses a JSON object of name -> finite number. `origin` names the source
/// in error messages.
MetricSet metric_set_from_json(const nlohmann::json& j, const std::string& origin);

} // namespace oat
