// hoeffding_tree.hpp: incremental Hoeffding decision trees.
//
// One implementation covers both variants:
//   - plain Hoeffding Tree (VFDT style): Gaussian numeric attribute
//     observers, information-gain splits gated by the Hoeffding bound,
//     adaptive naive-Bayes/majority leaf prediction;
//   - Hoeffding Adaptive Tree (adaptive = true): every node on the routing
//     path additionally monitors its 0/1 subtree error with ADWIN, grows an
//     alternate subtree when drift fires, and swaps the alternate in once it
//     is significantly more accurate than its host.
// Trees restricted to a per-leaf random feature subset (subspace_size > 0)
// are the base learners of the adaptive random forest.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "rill/adwin.hpp"
#include "rill/classifier.hpp"
#include "rill/random.hpp"
#include "rill/running_stats.hpp"

namespace rill {

/// One-sided Hoeffding bound: with confidence 1 - delta the observed mean of
/// n samples of a variable with range R is within eps of the true mean.
inline double hoeffding_bound(double range, double delta, double n) {
    return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * n));
}

struct SplitCandidate {
    std::size_t feature = 0;
    double threshold = 0.0;
    double merit = 0.0; // information gain in bits
};

struct TreeConfig {
    std::size_t num_classes = 0;
    std::size_t num_features = 0;
    double grace_period = 200.0;
    double split_confidence = 1e-7;
    double tie_threshold = 0.05;
    int candidate_thresholds = 10;
    double variance_floor = 1e-6;
    bool adaptive = false;         // Hoeffding Adaptive Tree behavior
    double adwin_delta = 0.002;    // per-node error windows (adaptive only)
    std::size_t subspace_size = 0; // 0 = all features; > 0 draws per new leaf
};

/// Sufficient statistics held at one leaf: class counts plus per-class
/// Gaussian observers (and observed min/max) for each tracked feature.
class LeafStatistics {
public:
    LeafStatistics(std::size_t num_classes, std::vector<std::size_t> tracked)
        : num_classes_(num_classes),
          tracked_(std::move(tracked)),
          class_counts_(num_classes, 0.0),
          moments_(tracked_.size() * num_classes),
          min_(tracked_.size(), std::numeric_limits<double>::infinity()),
          max_(tracked_.size(), -std::numeric_limits<double>::infinity()) {}

    void add(std::span<const double> x, std::size_t label) {
        class_counts_[label] += 1.0;
        for (std::size_t i = 0; i < tracked_.size(); ++i) {
            const double v = x[tracked_[i]];
            moments_[i * num_classes_ + label].add(v);
            min_[i] = std::min(min_[i], v);
            max_[i] = std::max(max_[i], v);
        }
    }

    /// Installs fractional class counts inherited from a parent split.
    void seed_counts(const std::vector<double>& counts) { class_counts_ = counts; }

    double total_weight() const {
        return std::accumulate(class_counts_.begin(), class_counts_.end(), 0.0);
    }

    std::size_t classes_observed() const {
        std::size_t n = 0;
        for (double c : class_counts_) {
            if (c > 0.0) ++n;
        }
        return n;
    }

    std::span<const double> class_counts() const { return class_counts_; }
    const std::vector<std::size_t>& tracked_features() const { return tracked_; }

    /// Add-one smoothed class frequencies.
    std::vector<double> proba_majority() const {
        std::vector<double> p(num_classes_);
        const double total = total_weight();
        for (std::size_t c = 0; c < num_classes_; ++c) {
            p[c] = (class_counts_[c] + 1.0) / (total + static_cast<double>(num_classes_));
        }
        return p;
    }

    /// Leaf-local naive-Bayes posterior over the tracked features.
    std::vector<double> proba_nb(std::span<const double> x, double variance_floor) const {
        const double total = total_weight();
        std::vector<double> log_post(num_classes_);
        for (std::size_t c = 0; c < num_classes_; ++c) {
            double lp = std::log((class_counts_[c] + 1.0) /
                                 (total + static_cast<double>(num_classes_)));
            for (std::size_t i = 0; i < tracked_.size(); ++i) {
                const RunningMoments& m = moments_[i * num_classes_ + c];
                if (m.count <= 0.0) continue;
                const double var = std::max(m.sample_variance(), variance_floor);
                const double d = x[tracked_[i]] - m.mean;
                lp += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
            }
            log_post[c] = lp;
        }
        double max_lp = log_post[0];
        for (double lp : log_post) max_lp = std::max(max_lp, lp);
        std::vector<double> proba(num_classes_);
        for (std::size_t c = 0; c < num_classes_; ++c) proba[c] = std::exp(log_post[c] - max_lp);
        normalize_proba(proba);
        return proba;
    }

    /// Proposes candidate binary splits: for every tracked feature,
    /// candidate_thresholds cut points evenly spaced across the observed
    /// range; child class masses are Gaussian head/tail weights. Sorted by
    /// merit descending (ties: lower feature, lower threshold).
    std::vector<SplitCandidate> split_candidates(int candidate_thresholds,
                                                 double variance_floor) const {
        std::vector<SplitCandidate> out;
        if (classes_observed() < 2) return out;
        std::vector<double> left_mass(num_classes_);
        std::vector<double> right_mass(num_classes_);
        for (std::size_t i = 0; i < tracked_.size(); ++i) {
            const double lo = min_[i];
            const double hi = max_[i];
            if (!(hi > lo)) continue;
            for (int k = 1; k <= candidate_thresholds; ++k) {
                const double t =
                    lo + (hi - lo) * static_cast<double>(k) /
                             static_cast<double>(candidate_thresholds + 1);
                if (!(t > lo && t < hi)) continue;
                double total_obs = 0.0;
                double total_left = 0.0;
                for (std::size_t c = 0; c < num_classes_; ++c) {
                    const RunningMoments& m = moments_[i * num_classes_ + c];
                    left_mass[c] = m.count > 0.0
                                       ? m.count * gaussian_cdf(t, m, variance_floor)
                                       : 0.0;
                    right_mass[c] = m.count - left_mass[c];
                    total_obs += m.count;
                    total_left += left_mass[c];
                }
                if (total_obs <= 0.0) continue;
                const double total_right = total_obs - total_left;
                double merit = entropy_bits(join(left_mass, right_mass), total_obs);
                if (total_left > 0.0) {
                    merit -= total_left / total_obs * entropy_bits(left_mass, total_left);
                }
                if (total_right > 0.0) {
                    merit -= total_right / total_obs * entropy_bits(right_mass, total_right);
                }
                out.push_back({tracked_[i], t, std::max(0.0, merit)});
            }
        }
        std::sort(out.begin(), out.end(), [](const SplitCandidate& a, const SplitCandidate& b) {
            if (a.merit != b.merit) return a.merit > b.merit;
            if (a.feature != b.feature) return a.feature < b.feature;
            return a.threshold < b.threshold;
        });
        return out;
    }

    /// Splits the full class counts (including inherited mass) across the
    /// two children of a split in the observed Gaussian proportions; classes
    /// without observations split evenly. Mass is conserved exactly.
    std::pair<std::vector<double>, std::vector<double>> partition_counts(
        std::size_t feature, double threshold, double variance_floor) const {
        std::vector<double> left(num_classes_, 0.0);
        std::vector<double> right(num_classes_, 0.0);
        const auto it = std::find(tracked_.begin(), tracked_.end(), feature);
        const bool tracked = it != tracked_.end();
        const std::size_t i = static_cast<std::size_t>(it - tracked_.begin());
        for (std::size_t c = 0; c < num_classes_; ++c) {
            double frac = 0.5;
            if (tracked) {
                const RunningMoments& m = moments_[i * num_classes_ + c];
                if (m.count > 0.0) frac = gaussian_cdf(threshold, m, variance_floor);
            }
            left[c] = class_counts_[c] * frac;
            right[c] = class_counts_[c] - left[c];
        }
        return {std::move(left), std::move(right)};
    }

private:
    static double gaussian_cdf(double t, const RunningMoments& m, double variance_floor) {
        const double sd = std::sqrt(std::max(m.sample_variance(), variance_floor));
        const double z = (t - m.mean) / sd;
        return 0.5 * std::erfc(-z / std::sqrt(2.0));
    }

    static std::vector<double> join(const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> s(a.size());
        for (std::size_t c = 0; c < a.size(); ++c) s[c] = a[c] + b[c];
        return s;
    }

    static double entropy_bits(const std::vector<double>& masses, double total) {
        double h = 0.0;
        for (double w : masses) {
            if (w > 0.0) {
                const double p = w / total;
                h -= p * std::log2(p);
            }
        }
        return h;
    }

    std::size_t num_classes_;
    std::vector<std::size_t> tracked_;
    std::vector<double> class_counts_;
    std::vector<RunningMoments> moments_; // tracked-major: [i * C + c]
    std::vector<double> min_;
    std::vector<double> max_;
};

class HoeffdingTree final : public Classifier {
public:
    struct SplitEvent {
        double gap;
        double epsilon;
        bool tie;
    };

    struct Stats {
        std::size_t splits = 0;
        std::size_t alternates_spawned = 0;
        std::size_t alternates_discarded = 0;
        std::size_t promotions = 0;
    };

    explicit HoeffdingTree(TreeConfig config, RandomSource* rng = nullptr)
        : cfg_(config), rng_(rng) {
        if (cfg_.num_classes < 2) throw ConfigError("tree: need at least two classes");
        if (cfg_.num_features < 1) throw ConfigError("tree: need at least one feature");
        if (cfg_.subspace_size > 0 && rng_ == nullptr) {
            throw ConfigError("tree: feature subspacing needs a random source");
        }
        root_ = make_leaf();
    }

    std::size_t num_classes() const override { return cfg_.num_classes; }

    void learn_one(const Instance& inst) override {
        if (cfg_.adaptive) {
            adaptive_learn(inst);
        } else {
            learn_at_leaf(route(root_.get(), inst.features), inst);
        }
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        const Node* node = root_.get();
        while (!node->is_leaf) {
            node = x[node->split_feature] <= node->split_threshold ? node->left.get()
                                                                   : node->right.get();
        }
        return leaf_proba(*node, x);
    }

    const Stats& stats() const { return stats_; }
    const std::vector<SplitEvent>& split_events() const { return split_events_; }

    bool root_is_split() const { return !root_->is_leaf; }
    std::size_t root_split_feature() const { return root_->split_feature; }
    double root_split_threshold() const { return root_->split_threshold; }

    std::size_t node_count() const { return count_nodes(root_.get(), false); }
    std::size_t node_count_with_alternates() const { return count_nodes(root_.get(), true); }

    /// Sum of class counts over all main-tree leaves; equals the number of
    /// instances learned (to rounding) because splits hand their mass down.
    double total_leaf_weight() const { return leaf_weight(root_.get()); }

private:
    struct Node {
        explicit Node(LeafStatistics s) : stats(std::move(s)) {}

        bool is_leaf = true;
        LeafStatistics stats;
        double weight_seen = 0.0;
        double weight_at_last_eval = 0.0;
        double mc_correct = 0.0;
        double nb_correct = 0.0;

        std::size_t split_feature = 0;
        double split_threshold = 0.0;
        std::unique_ptr<Node> left;
        std::unique_ptr<Node> right;

        std::unique_ptr<Adwin> error_window; // adaptive only
        std::unique_ptr<Node> alternate;     // adaptive only
    };

    struct PathEntry {
        Node* node;
        Node* parent;
        bool went_left;
    };

    std::unique_ptr<Node> make_leaf() {
        return std::make_unique<Node>(LeafStatistics(cfg_.num_classes, draw_tracked()));
    }

    std::vector<std::size_t> draw_tracked() {
        std::vector<std::size_t> all(cfg_.num_features);
        std::iota(all.begin(), all.end(), std::size_t{0});
        if (cfg_.subspace_size == 0 || cfg_.subspace_size >= cfg_.num_features) return all;
        // partial Fisher-Yates from the owning member's random stream
        for (std::size_t i = 0; i < cfg_.subspace_size; ++i) {
            const std::size_t j = i + rng_->next_index(all.size() - i);
            std::swap(all[i], all[j]);
        }
        all.resize(cfg_.subspace_size);
        std::sort(all.begin(), all.end());
        return all;
    }

    static Node* route(Node* node, std::span<const double> x) {
        while (!node->is_leaf) {
            node = x[node->split_feature] <= node->split_threshold ? node->left.get()
                                                                   : node->right.get();
        }
        return node;
    }

    std::vector<double> leaf_proba(const Node& leaf, std::span<const double> x) const {
        if (leaf.nb_correct > leaf.mc_correct) {
            return leaf.stats.proba_nb(x, cfg_.variance_floor);
        }
        return leaf.stats.proba_majority();
    }

    void learn_at_leaf(Node* leaf, const Instance& inst) {
        // score both leaf predictors against this instance before absorbing it
        if (leaf->weight_seen > 0.0) {
            if (argmax_lowest(leaf->stats.proba_majority()) == inst.label) {
                leaf->mc_correct += 1.0;
            }
            if (argmax_lowest(leaf->stats.proba_nb(inst.features, cfg_.variance_floor)) ==
                inst.label) {
                leaf->nb_correct += 1.0;
            }
        }
        leaf->stats.add(inst.features, inst.label);
        leaf->weight_seen += 1.0;
        if (leaf->weight_seen - leaf->weight_at_last_eval >= cfg_.grace_period) {
            attempt_split(leaf);
            leaf->weight_at_last_eval = leaf->weight_seen;
        }
    }

    void attempt_split(Node* node) {
        const auto candidates =
            node->stats.split_candidates(cfg_.candidate_thresholds, cfg_.variance_floor);
        if (candidates.empty() || candidates[0].merit <= 0.0) return;
        const double range = std::log2(static_cast<double>(cfg_.num_classes));
        const double eps = hoeffding_bound(range, cfg_.split_confidence, node->weight_seen);
        const double second = candidates.size() > 1 ? candidates[1].merit : 0.0;
        const double gap = candidates[0].merit - second;
        const bool tie = eps < cfg_.tie_threshold;
        if (gap > eps || tie) {
            perform_split(node, candidates[0]);
            split_events_.push_back({gap, eps, tie});
            ++stats_.splits;
        }
    }

    void perform_split(Node* node, const SplitCandidate& best) {
        auto [left_counts, right_counts] =
            node->stats.partition_counts(best.feature, best.threshold, cfg_.variance_floor);
        node->left = make_seeded_leaf(std::move(left_counts));
        node->right = make_seeded_leaf(std::move(right_counts));
        node->split_feature = best.feature;
        node->split_threshold = best.threshold;
        node->is_leaf = false;
        node->stats = LeafStatistics(cfg_.num_classes, {}); // release observer memory
    }

    std::unique_ptr<Node> make_seeded_leaf(std::vector<double> counts) {
        auto leaf = make_leaf();
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        leaf->stats.seed_counts(counts);
        leaf->weight_seen = total;
        leaf->weight_at_last_eval = total;
        return leaf;
    }

    void adaptive_learn(const Instance& inst) {
        std::vector<PathEntry> path;
        {
            Node* node = root_.get();
            Node* parent = nullptr;
            bool went_left = false;
            while (true) {
                path.push_back({node, parent, went_left});
                if (node->is_leaf) break;
                parent = node;
                went_left = inst.features[node->split_feature] <= node->split_threshold;
                node = went_left ? node->left.get() : node->right.get();
            }
        }
        Node* leaf = path.back().node;

        // the subtree prediction at every node on the path is the prediction
        // of the one leaf the instance routes to
        const double err =
            argmax_lowest(leaf_proba(*leaf, inst.features)) == inst.label ? 0.0 : 1.0;

        // feed every node's error window; an upward change in the error mean
        // starts an alternate subtree
        for (PathEntry& entry : path) {
            Node* n = entry.node;
            if (!n->error_window) n->error_window = std::make_unique<Adwin>(cfg_.adwin_delta);
            const double mean_before = n->error_window->size() > 0 ? n->error_window->mean() : 0.0;
            const bool fired = n->error_window->add(err);
            if (fired && n->error_window->mean() > mean_before && !n->alternate) {
                n->alternate = make_leaf();
                ++stats_.alternates_spawned;
            }
        }

        // alternates train on the same routed instances and compete with
        // their host via the ADWIN cut threshold over windowed error means
        bool structure_replaced = false;
        for (const PathEntry& entry : path) {
            Node* n = entry.node;
            if (!n->alternate) continue;
            Node* alt_leaf = route(n->alternate.get(), inst.features);
            const double alt_err =
                argmax_lowest(leaf_proba(*alt_leaf, inst.features)) == inst.label ? 0.0 : 1.0;
            Node* alt_root = n->alternate.get();
            if (!alt_root->error_window) {
                alt_root->error_window = std::make_unique<Adwin>(cfg_.adwin_delta);
            }
            alt_root->error_window->add(alt_err);
            learn_at_leaf(alt_leaf, inst);

            const Adwin& host_w = *n->error_window;
            const Adwin& alt_w = *alt_root->error_window;
            if (host_w.size() >= 1 && alt_w.size() >= 1) {
                const double eps = adwin_cut_threshold(host_w.size(), alt_w.size(),
                                                       host_w.size() + alt_w.size(),
                                                       cfg_.adwin_delta);
                if (host_w.mean() - alt_w.mean() >= eps) {
                    std::unique_ptr<Node> promoted = std::move(n->alternate);
                    child_slot(entry.parent, entry.went_left) = std::move(promoted);
                    ++stats_.promotions;
                    structure_replaced = true;
                    break; // everything below the host is gone
                }
                if (alt_w.mean() - host_w.mean() >= eps) {
                    n->alternate.reset();
                    ++stats_.alternates_discarded;
                }
            }
        }

        if (!structure_replaced) learn_at_leaf(leaf, inst);
    }

    std::unique_ptr<Node>& child_slot(Node* parent, bool went_left) {
        if (parent == nullptr) return root_;
        return went_left ? parent->left : parent->right;
    }

    static std::size_t count_nodes(const Node* node, bool include_alternates) {
        if (node == nullptr) return 0;
        std::size_t n = 1;
        if (!node->is_leaf) {
            n += count_nodes(node->left.get(), include_alternates);
            n += count_nodes(node->right.get(), include_alternates);
        }
        if (include_alternates && node->alternate) {
            n += count_nodes(node->alternate.get(), include_alternates);
        }
        return n;
    }

    static double leaf_weight(const Node* node) {
        if (node->is_leaf) return node->stats.total_weight();
        return leaf_weight(node->left.get()) + leaf_weight(node->right.get());
    }

    TreeConfig cfg_;
    RandomSource* rng_;
    std::unique_ptr<Node> root_;
    Stats stats_;
    std::vector<SplitEvent> split_events_;
};

/// Hoeffding Adaptive Tree configuration helper.
inline TreeConfig hat_config(std::size_t num_classes, std::size_t num_features) {
    TreeConfig cfg;
    cfg.num_classes = num_classes;
    cfg.num_features = num_features;
    cfg.adaptive = true;
    return cfg;
}

inline TreeConfig ht_config(std::size_t num_classes, std::size_t num_features) {
    TreeConfig cfg;
    cfg.num_classes = num_classes;
    cfg.num_features = num_features;
    return cfg;
}

} // namespace rill
