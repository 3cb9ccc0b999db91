#pragma once

#include "oat/factor_table.hpp"
#include "oat/metrics.hpp"
#include "oat/objective.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oat {

/// A pairwise bonus applied when two factors sit at specific levels.
struct InteractionTerm {
    std::string factor_a;
    std::string factor_b;
    int level_a = 1; // 1-based
    int level_b = 1;
    double bonus = 0.0;

    bool operator==(const InteractionTerm&) const = default;
};

/// Deterministic synthetic objective: a per-factor effect table, optionally
/// plus interaction bonuses or seeded noise, with exact lookup overrides for
/// chosen level combinations. Stands in for real training runs so the whole
/// pipeline is testable at desk scale.
struct SyntheticSpec {
    enum class Kind { Additive, AdditiveInteraction, Noisy };

    Kind kind = Kind::Additive;
    std::string metric = "acc";
    FactorLevelTable table;
    std::vector<std::vector<double>> effects; // [factor][level-1]
    std::vector<InteractionTerm> interactions;
    double noise_sigma = 0.0;
    // level-index tuple (declaration order) -> exact value, checked first
    std::map<std::vector<int>, double> exact_rows;

    /// Sum of the per-factor maxima: the analytic optimum of a pure
    /// additive spec.
    double additive_maximum() const;

    /// Level indices maximizing each factor's effect (lowest index wins
    /// ties).
    std::vector<int> additive_argmax() const;
};

/// Evaluates the spec at a concrete assignment. The assignment must cover
/// every factor with one of its declared level values
/// (Error{UnknownLevel} otherwise). Noise, when enabled, is generated
/// deterministically from the protocol-provided seed: same seed, same value.
MetricSet eval_synthetic(const SyntheticSpec& spec, const Assignment& assignment,
                         std::uint64_t seed);

/// Objective adapter for in-process use.
class SyntheticObjective : public Objective {
public:
    explicit SyntheticObjective(SyntheticSpec spec) : spec_(std::move(spec)) {}
    MetricSet evaluate(const TrialInput& input) const override {
        return eval_synthetic(spec_, input.assignment, input.seed);
    }
    const SyntheticSpec& spec() const { return spec_; }

private:
    SyntheticSpec spec_;
};

/// Fixture reproducing a published RNN tuning case study: the nine measured
/// accuracies of the 9-row, 4-factor, 3-level design are exact lookups; any
/// other combination falls back to the additive main-effects fit of those
/// nine values. The off-design values are synthetic extrapolations, not
/// measurements.
SyntheticSpec reference_rnn_spec();

/// Same construction for the companion CNN case study.
SyntheticSpec reference_cnn_spec();

/// Named built-ins for the oat-synth executable: "rnn-reference",
/// "cnn-reference", "additive-demo".
SyntheticSpec builtin_spec(const std::string& name);
std::vector<std::string> builtin_spec_names();

nlohmann::json synthetic_spec_to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& document);

} // namespace oat
