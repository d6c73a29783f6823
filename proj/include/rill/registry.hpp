// registry.hpp: builds classifiers by name with hyperparameter overrides.
//
// Registry names mirror the experiment roster: seven single learners, two
// baselines, the homogeneous ensembles HT(10)/HAT(10)/ARF(10)/ARF(20), the
// three two-member soft-vote pairs, and weighted majority.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "rill/adaptive_random_forest.hpp"
#include "rill/bagging.hpp"
#include "rill/baselines.hpp"
#include "rill/classifier.hpp"
#include "rill/hoeffding_tree.hpp"
#include "rill/knn.hpp"
#include "rill/linear.hpp"
#include "rill/naive_bayes.hpp"
#include "rill/standardizer.hpp"
#include "rill/voting.hpp"
#include "rill/weighted_majority.hpp"

namespace rill {

inline const std::vector<std::string>& model_registry_names() {
    static const std::vector<std::string> names = {
        "nb",   "knn",   "perceptron", "pa",      "svm",    "ht",
        "hat",  "no_change", "majority_class", "ht10", "hat10", "arf10",
        "arf20", "arf_hat", "arf_nb", "hat_nb", "wm"};
    return names;
}

inline std::string nearest_model_name(const std::string& name) {
    const auto distance = [](const std::string& a, const std::string& b) {
        std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
        for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            cur[0] = i;
            for (std::size_t j = 1; j <= b.size(); ++j) {
                const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
            }
            std::swap(prev, cur);
        }
        return prev[b.size()];
    };
    std::string best = model_registry_names().front();
    std::size_t best_d = distance(name, best);
    for (const auto& candidate : model_registry_names()) {
        const std::size_t d = distance(name, candidate);
        if (d < best_d) {
            best_d = d;
            best = candidate;
        }
    }
    return best;
}

namespace detail {

inline void check_param_keys(const nlohmann::json& params,
                             std::initializer_list<const char*> allowed,
                             const std::string& model) {
    if (params.is_null()) return;
    if (!params.is_object()) throw ConfigError("model params must be an object");
    for (const auto& [key, value] : params.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            throw ConfigError("unknown parameter '" + key + "' for model '" + model + "'");
        }
    }
}

inline double num_or(const nlohmann::json& params, const char* key, double dflt) {
    if (params.is_object() && params.contains(key)) return params.at(key).get<double>();
    return dflt;
}

inline std::size_t size_or(const nlohmann::json& params, const char* key, std::size_t dflt) {
    if (params.is_object() && params.contains(key)) return params.at(key).get<std::size_t>();
    return dflt;
}

inline bool flag_or(const nlohmann::json& params, const char* key, bool dflt) {
    if (params.is_object() && params.contains(key)) return params.at(key).get<bool>();
    return dflt;
}

inline TreeConfig tree_config_from(const nlohmann::json& params, std::size_t num_classes,
                                   std::size_t num_features, bool adaptive) {
    TreeConfig cfg;
    cfg.num_classes = num_classes;
    cfg.num_features = num_features;
    cfg.adaptive = adaptive;
    cfg.grace_period = num_or(params, "grace_period", cfg.grace_period);
    cfg.split_confidence = num_or(params, "split_confidence", cfg.split_confidence);
    cfg.tie_threshold = num_or(params, "tie_threshold", cfg.tie_threshold);
    cfg.candidate_thresholds =
        static_cast<int>(size_or(params, "candidate_thresholds",
                                 static_cast<std::size_t>(cfg.candidate_thresholds)));
    cfg.variance_floor = num_or(params, "variance_floor", cfg.variance_floor);
    cfg.adwin_delta = num_or(params, "adwin_delta", cfg.adwin_delta);
    return cfg;
}

constexpr std::initializer_list<const char*> kTreeKeys = {
    "grace_period", "split_confidence", "tie_threshold",
    "candidate_thresholds", "variance_floor", "adwin_delta"};

constexpr std::initializer_list<const char*> kBagKeys = {
    "grace_period", "split_confidence", "tie_threshold",  "candidate_thresholds",
    "variance_floor", "adwin_delta",   "n_members",       "lambda",
    "force_unit_weight"};

constexpr std::initializer_list<const char*> kArfKeys = {
    "grace_period", "split_confidence", "tie_threshold", "candidate_thresholds",
    "variance_floor", "lambda",         "subspace_size", "warning_delta",
    "drift_delta"};

} // namespace detail

inline ClassifierPtr build_model(const std::string& name, std::size_t num_classes,
                                 std::size_t num_features, std::uint64_t seed,
                                 const nlohmann::json& params = nlohmann::json::object());

namespace detail {

inline ClassifierPtr standardized(std::size_t num_features, ClassifierPtr inner,
                                  const nlohmann::json& params) {
    return std::make_unique<StandardizedClassifier>(num_features, std::move(inner),
                                                    num_or(params, "epsilon", 1e-12));
}

inline ClassifierPtr build_bag(const std::string& member_name, std::size_t n_members,
                               std::size_t num_classes, std::size_t num_features,
                               std::uint64_t seed, const nlohmann::json& params) {
    const bool adaptive = member_name == "hat";
    return std::make_unique<OzaBag>(
        size_or(params, "n_members", n_members), seed,
        [&](std::size_t, std::uint64_t) -> ClassifierPtr {
            return std::make_unique<HoeffdingTree>(
                tree_config_from(params, num_classes, num_features, adaptive));
        },
        num_or(params, "lambda", 1.0), flag_or(params, "force_unit_weight", false));
}

inline ClassifierPtr build_arf(std::size_t n_members, std::size_t num_classes,
                               std::size_t num_features, std::uint64_t seed,
                               const nlohmann::json& params) {
    ArfConfig cfg;
    cfg.n_members = size_or(params, "n_members", n_members);
    cfg.lambda = num_or(params, "lambda", cfg.lambda);
    cfg.subspace_size = size_or(params, "subspace_size", 0);
    cfg.warning_delta = num_or(params, "warning_delta", cfg.warning_delta);
    cfg.drift_delta = num_or(params, "drift_delta", cfg.drift_delta);
    cfg.tree = tree_config_from(params, num_classes, num_features, false);
    return std::make_unique<AdaptiveRandomForest>(cfg, seed);
}

inline ClassifierPtr build_pair(const std::string& first, const std::string& second,
                                std::size_t num_classes, std::size_t num_features,
                                std::uint64_t seed, const nlohmann::json& params) {
    std::vector<ClassifierPtr> members;
    members.push_back(build_model(first, num_classes, num_features, mix_seed(seed, 0)));
    members.push_back(build_model(second, num_classes, num_features, mix_seed(seed, 1)));
    return std::make_unique<VotingEnsemble>(std::move(members), std::vector<double>{},
                                            flag_or(params, "hard_vote", false));
}

} // namespace detail

inline ClassifierPtr build_model(const std::string& name, std::size_t num_classes,
                                 std::size_t num_features, std::uint64_t seed,
                                 const nlohmann::json& params) {
    using namespace detail;
    if (name == "nb") {
        check_param_keys(params, {"variance_floor"}, name);
        return std::make_unique<GaussianNaiveBayes>(num_classes, num_features,
                                                    num_or(params, "variance_floor", 1e-6));
    }
    if (name == "knn") {
        check_param_keys(params, {"k", "window", "epsilon"}, name);
        return standardized(num_features,
                            std::make_unique<SlidingWindowKnn>(num_classes,
                                                               size_or(params, "k", 10),
                                                               size_or(params, "window", 1000)),
                            params);
    }
    if (name == "perceptron") {
        check_param_keys(params, {"eta", "epsilon"}, name);
        return standardized(num_features,
                            std::make_unique<Perceptron>(num_classes, num_features,
                                                         num_or(params, "eta", 0.1)),
                            params);
    }
    if (name == "pa") {
        check_param_keys(params, {"c", "epsilon"}, name);
        return standardized(num_features,
                            std::make_unique<PassiveAggressive>(num_classes, num_features,
                                                                num_or(params, "c", 1.0)),
                            params);
    }
    if (name == "svm") {
        check_param_keys(params, {"eta", "lambda", "epsilon"}, name);
        return standardized(num_features,
                            std::make_unique<LinearSvm>(num_classes, num_features,
                                                        num_or(params, "eta", 0.1),
                                                        num_or(params, "lambda", 1e-4)),
                            params);
    }
    if (name == "ht" || name == "hat") {
        check_param_keys(params, kTreeKeys, name);
        return std::make_unique<HoeffdingTree>(
            tree_config_from(params, num_classes, num_features, name == "hat"));
    }
    if (name == "no_change") {
        check_param_keys(params, {}, name);
        return std::make_unique<NoChangeBaseline>(num_classes);
    }
    if (name == "majority_class") {
        check_param_keys(params, {}, name);
        return std::make_unique<MajorityClassBaseline>(num_classes);
    }
    if (name == "ht10" || name == "hat10") {
        check_param_keys(params, kBagKeys, name);
        return build_bag(name == "ht10" ? "ht" : "hat", 10, num_classes, num_features, seed,
                         params);
    }
    if (name == "arf10" || name == "arf20") {
        check_param_keys(params, kArfKeys, name);
        return build_arf(name == "arf10" ? 10 : 20, num_classes, num_features, seed, params);
    }
    if (name == "arf_hat") {
        check_param_keys(params, {"hard_vote"}, name);
        return build_pair("arf10", "hat", num_classes, num_features, seed, params);
    }
    if (name == "arf_nb") {
        check_param_keys(params, {"hard_vote"}, name);
        return build_pair("arf10", "nb", num_classes, num_features, seed, params);
    }
    if (name == "hat_nb") {
        check_param_keys(params, {"hard_vote"}, name);
        return build_pair("hat", "nb", num_classes, num_features, seed, params);
    }
    if (name == "wm") {
        check_param_keys(params, {"beta"}, name);
        std::vector<ClassifierPtr> experts;
        experts.push_back(build_model("nb", num_classes, num_features, mix_seed(seed, 0)));
        experts.push_back(build_model("ht", num_classes, num_features, mix_seed(seed, 1)));
        experts.push_back(build_model("hat", num_classes, num_features, mix_seed(seed, 2)));
        return std::make_unique<WeightedMajority>(std::move(experts),
                                                  detail::num_or(params, "beta", 0.5));
    }
    std::string all;
    for (const auto& n : model_registry_names()) {
        all += all.empty() ? n : ", " + n;
    }
    throw ConfigError("unknown model '" + name + "' (did you mean '" + nearest_model_name(name) +
                      "'?); valid names: " + all);
}

/// Builds an ensemble from its display label ("HT(10)", "ARF + HAT", ...),
/// the naming used in comparison figures and tables.
inline ClassifierPtr build_ensemble_from_label(const std::string& label,
                                               std::size_t num_classes,
                                               std::size_t num_features, std::uint64_t seed) {
    static const std::vector<std::pair<std::string, std::string>> mapping = {
        {"HT(10)", "ht10"},      {"HAT(10)", "hat10"},  {"ARF(10)", "arf10"},
        {"ARF(20)", "arf20"},    {"ARF + HAT", "arf_hat"}, {"ARF + NB", "arf_nb"},
        {"HAT + NB", "hat_nb"}};
    for (const auto& [display, key] : mapping) {
        if (label == display) return build_model(key, num_classes, num_features, seed);
    }
    throw ConfigError("unknown ensemble label '" + label + "'");
}

} // namespace rill
