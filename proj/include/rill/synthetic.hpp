// synthetic.hpp: deterministic synthetic drift streams for testing drift
// behavior. Features are uniform in [0, 10); labels come from a threshold
// rule on one feature, optionally inverted, with independent label noise.

#pragma once

#include <memory>
#include <string>

#include "rill/instance.hpp"
#include "rill/random.hpp"

namespace rill {

/// A generating concept: label = [x[feature] <= threshold], XOR flip.
struct ConceptRule {
    std::string id = "threshold";
    std::size_t feature = 0;
    double threshold = 5.0;
    bool flip = false;
};

struct DriftStreamSpec {
    ConceptRule concept_a;
    ConceptRule concept_b;
    std::uint64_t switch_position = 0; // instances before this follow concept_a
    double noise_rate = 0.0;           // in [0, 0.5)
    std::uint64_t seed = 0;
    std::size_t feature_count = 2;
};

class DriftStream final : public InstanceStream {
public:
    DriftStream(DriftStreamSpec spec, std::size_t length)
        : spec_(std::move(spec)), length_(length), rng_(spec_.seed) {
        if (length_ == 0) throw DomainError("drift stream length must be positive");
        validate_rule(spec_.concept_a);
        validate_rule(spec_.concept_b);
        if (!(spec_.noise_rate >= 0.0 && spec_.noise_rate < 0.5)) {
            throw DomainError("noise_rate must lie in [0, 0.5)");
        }
        schema_.label_column = "label";
        schema_.class_names = {"c0", "c1"};
        for (std::size_t j = 0; j < spec_.feature_count; ++j) {
            schema_.feature_names.push_back("f" + std::to_string(j));
        }
    }

    std::optional<Instance> next() override {
        if (position_ >= length_) return std::nullopt;
        Instance inst;
        inst.sequence_number = position_;
        inst.features.resize(spec_.feature_count);
        for (auto& f : inst.features) f = rng_.next_double() * 10.0;
        const ConceptRule& rule =
            position_ < spec_.switch_position ? spec_.concept_a : spec_.concept_b;
        inst.label = apply_rule(rule, inst.features);
        const double u = rng_.next_double();
        if (u < spec_.noise_rate) inst.label = 1 - inst.label;
        ++position_;
        return inst;
    }

    const Schema& schema() const override { return schema_; }
    std::size_t num_classes() const override { return 2; }

    /// The noiseless label the given rule assigns to x.
    static std::size_t apply_rule(const ConceptRule& rule, const std::vector<double>& x) {
        const bool left = x[rule.feature] <= rule.threshold;
        const std::size_t label = left ? 0 : 1;
        return rule.flip ? 1 - label : label;
    }

private:
    void validate_rule(const ConceptRule& rule) const {
        if (rule.id != "threshold") {
            throw ConfigError("unknown concept rule id: '" + rule.id + "'");
        }
        if (rule.feature >= spec_.feature_count) {
            throw ConfigError("concept rule feature index out of range");
        }
    }

    DriftStreamSpec spec_;
    std::size_t length_;
    RandomSource rng_;
    Schema schema_;
    std::uint64_t position_ = 0;
};

inline std::unique_ptr<DriftStream> generate_drift_stream(const DriftStreamSpec& spec,
                                                          std::size_t length) {
    return std::make_unique<DriftStream>(spec, length);
}

} // namespace rill
