#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"

using namespace rill;
using rill::testing::make_instance;

namespace {

/// Test stub with a constant probability vector; never learns anything.
class FixedProba final : public Classifier {
public:
    explicit FixedProba(std::vector<double> proba) : proba_(std::move(proba)) {}
    std::size_t num_classes() const override { return proba_.size(); }
    void learn_one(const Instance&) override {}
    std::vector<double> predict_proba(std::span<const double>) const override { return proba_; }

private:
    std::vector<double> proba_;
};

/// Expert whose predictions can be scripted per call; used for the weighted
/// majority hand traces.
class ScriptedExpert final : public Classifier {
public:
    ScriptedExpert(std::size_t num_classes, std::vector<std::size_t> script)
        : num_classes_(num_classes), script_(std::move(script)) {}
    std::size_t num_classes() const override { return num_classes_; }
    void learn_one(const Instance&) override {}
    std::vector<double> predict_proba(std::span<const double>) const override {
        std::vector<double> p(num_classes_, 0.0);
        const std::size_t vote = script_[std::min(cursor_, script_.size() - 1)];
        ++cursor_;
        p[vote] = 1.0;
        return p;
    }

private:
    std::size_t num_classes_;
    std::vector<std::size_t> script_;
    mutable std::size_t cursor_ = 0;
};

} // namespace

TEST_CASE("poisson sampler matches the closed-form pmf at lambda 1") {
    RandomSource rng(100);
    std::vector<std::size_t> counts(16, 0);
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) {
        const int k = poisson_sample(1.0, rng);
        REQUIRE(k >= 0);
        counts[std::min<std::size_t>(k, counts.size() - 1)] += 1;
    }
    const double e1 = std::exp(-1.0);
    CHECK_THAT(double(counts[0]) / draws, Catch::Matchers::WithinAbs(e1, 0.002));
    CHECK_THAT(double(counts[1]) / draws, Catch::Matchers::WithinAbs(e1, 0.002));
    CHECK_THAT(double(counts[2]) / draws, Catch::Matchers::WithinAbs(e1 / 2.0, 0.002));
}

TEST_CASE("poisson sample mean at lambda 6") {
    RandomSource rng(101);
    double total = 0.0;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) total += poisson_sample(6.0, rng);
    CHECK_THAT(total / draws, Catch::Matchers::WithinAbs(6.0, 0.02));
}

TEST_CASE("poisson draws are deterministic per seed") {
    RandomSource a(7), b(7), c(8);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const int ka = poisson_sample(1.0, a);
        const int kb = poisson_sample(1.0, b);
        const int kc = poisson_sample(1.0, c);
        all_equal &= (ka == kb);
        any_diff |= (ka != kc);
    }
    CHECK(all_equal);
    CHECK(any_diff);
    CHECK_THROWS_AS(poisson_sample(0.0, a), DomainError);
}

TEST_CASE("forced unit-weight one-member bag equals the bare learner") {
    OzaBag bag(1, 42,
               [](std::size_t, std::uint64_t) -> ClassifierPtr {
                   return std::make_unique<HoeffdingTree>(ht_config(2, 2));
               },
               1.0, /*force_unit_weight=*/true);
    HoeffdingTree bare(ht_config(2, 2));

    DriftStreamSpec spec;
    spec.seed = 3;
    spec.noise_rate = 0.05;
    auto stream = generate_drift_stream(spec, 4000);
    while (auto inst = stream->next()) {
        CHECK(bag.predict_one(inst->features) == bare.predict_one(inst->features));
        bag.learn_one(*inst);
        bare.learn_one(*inst);
    }
}

TEST_CASE("member update totals concentrate around the stream length") {
    OzaBag bag(10, 9,
               [](std::size_t, std::uint64_t) -> ClassifierPtr {
                   return std::make_unique<MajorityClassBaseline>(2);
               });
    DriftStreamSpec spec;
    spec.seed = 4;
    auto stream = generate_drift_stream(spec, 10000);
    while (auto inst = stream->next()) bag.learn_one(*inst);
    for (std::size_t i = 0; i < bag.size(); ++i) {
        CHECK(bag.member_updates(i) > 9000);
        CHECK(bag.member_updates(i) < 11000);
    }
}

TEST_CASE("adding a member never perturbs existing members' draws") {
    const auto factory = [](std::size_t, std::uint64_t) -> ClassifierPtr {
        return std::make_unique<MajorityClassBaseline>(2);
    };
    OzaBag three(3, 5, factory);
    OzaBag four(4, 5, factory);
    DriftStreamSpec spec;
    spec.seed = 6;
    auto stream = generate_drift_stream(spec, 5000);
    while (auto inst = stream->next()) {
        three.learn_one(*inst);
        four.learn_one(*inst);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(three.member_updates(i) == four.member_updates(i));
    }
}

TEST_CASE("soft vote averages member probabilities") {
    SECTION("unanimous certain members") {
        std::vector<ClassifierPtr> members;
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.0, 1.0}));
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.0, 1.0}));
        VotingEnsemble vote(std::move(members));
        const auto p = vote.predict_proba(std::vector<double>{0.0});
        CHECK(p[1] == 1.0);
    }
    SECTION("opposed members tie and break to the lowest index") {
        std::vector<ClassifierPtr> members;
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{1.0, 0.0}));
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.0, 1.0}));
        VotingEnsemble vote(std::move(members));
        const auto p = vote.predict_proba(std::vector<double>{0.0});
        CHECK_THAT(p[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK(vote.predict_one(std::vector<double>{0.0}) == 0);
    }
    SECTION("weighted average from the worked example") {
        std::vector<ClassifierPtr> members;
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.6, 0.4}));
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.2, 0.8}));
        VotingEnsemble vote(std::move(members), {3.0, 1.0});
        const auto p = vote.predict_proba(std::vector<double>{0.0});
        CHECK_THAT(p[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK_THAT(p[1], Catch::Matchers::WithinAbs(0.5, 1e-12));
    }
    SECTION("weighted exact tie breaks to the lowest index") {
        // dyadic probabilities keep the weighted sums exactly equal
        std::vector<ClassifierPtr> members;
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.625, 0.375}));
        members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.125, 0.875}));
        VotingEnsemble vote(std::move(members), {3.0, 1.0});
        const auto p = vote.predict_proba(std::vector<double>{0.0});
        CHECK(p[0] == p[1]);
        CHECK(vote.predict_one(std::vector<double>{0.0}) == 0);
    }
}

TEST_CASE("hard vote counts argmax ballots") {
    std::vector<ClassifierPtr> members;
    members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.6, 0.4}));
    members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.45, 0.55}));
    members.push_back(std::make_unique<FixedProba>(std::vector<double>{0.49, 0.51}));
    VotingEnsemble vote(std::move(members), {}, /*hard_vote=*/true);
    const auto p = vote.predict_proba(std::vector<double>{0.0});
    CHECK_THAT(p[1], Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("weighted majority halves the weight of a wrong expert") {
    std::vector<ClassifierPtr> experts;
    experts.push_back(std::make_unique<ScriptedExpert>(2, std::vector<std::size_t>{1}));
    experts.push_back(std::make_unique<ScriptedExpert>(2, std::vector<std::size_t>{0}));
    WeightedMajority wm(std::move(experts), 0.5);
    wm.learn_one(make_instance({0.0}, 0)); // expert 0 votes 1: wrong
    CHECK(wm.weights()[0] == 0.5);
    CHECK(wm.weights()[1] == 1.0);
}

TEST_CASE("after one mistake the ensemble follows the heavier expert") {
    // expert 0 is wrong once, then the two experts disagree
    std::vector<ClassifierPtr> experts;
    experts.push_back(std::make_unique<ScriptedExpert>(2, std::vector<std::size_t>{1, 0}));
    experts.push_back(std::make_unique<ScriptedExpert>(2, std::vector<std::size_t>{0, 1}));
    WeightedMajority wm(std::move(experts), 0.5);
    wm.learn_one(make_instance({0.0}, 0)); // weights become (0.5, 1)
    CHECK(wm.predict_one(std::vector<double>{0.0}) == 1);
}

TEST_CASE("weighted majority weights never increase between renormalizations") {
    std::vector<ClassifierPtr> experts;
    experts.push_back(std::make_unique<GaussianNaiveBayes>(2, 2));
    experts.push_back(std::make_unique<MajorityClassBaseline>(2));
    WeightedMajority wm(std::move(experts), 0.5);
    DriftStreamSpec spec;
    spec.seed = 7;
    spec.noise_rate = 0.2;
    auto stream = generate_drift_stream(spec, 2000);
    std::vector<double> prev(wm.weights().begin(), wm.weights().end());
    std::size_t renorms_seen = 0;
    while (auto inst = stream->next()) {
        wm.learn_one(*inst);
        const bool renormalized = wm.renormalizations() > renorms_seen;
        renorms_seen = wm.renormalizations();
        for (std::size_t i = 0; i < prev.size(); ++i) {
            if (!renormalized) CHECK(wm.weights()[i] <= prev[i]);
            prev[i] = wm.weights()[i];
        }
    }
    CHECK(renorms_seen > 0); // the underflow guard actually exercised
}

TEST_CASE("a consistently right expert outweighs an erring one") {
    std::vector<ClassifierPtr> experts;
    // expert 0 always votes class 1 (wrong half the time); expert 1 learns
    experts.push_back(std::make_unique<ScriptedExpert>(2, std::vector<std::size_t>{1}));
    experts.push_back(std::make_unique<GaussianNaiveBayes>(2, 2));
    WeightedMajority wm(std::move(experts), 0.5);
    DriftStreamSpec spec;
    spec.seed = 8;
    auto stream = generate_drift_stream(spec, 1000);
    while (auto inst = stream->next()) wm.learn_one(*inst);
    CHECK(wm.weights()[1] > wm.weights()[0]);
}

TEST_CASE("arf with silent detectors is just bagged subspace trees") {
    ArfConfig cfg;
    cfg.n_members = 5;
    cfg.warning_delta = 1e-12;
    cfg.drift_delta = 1e-12;
    cfg.tree = ht_config(2, 2);
    AdaptiveRandomForest arf(cfg, 42);
    DriftStreamSpec spec;
    spec.seed = 9;
    auto stream = generate_drift_stream(spec, 15000);
    while (auto inst = stream->next()) arf.learn_one(*inst);
    CHECK(arf.replacements() == 0);
    CHECK(arf.warnings() == 0);
}

TEST_CASE("arf members are replaced after an abrupt inversion") {
    ArfConfig cfg;
    cfg.n_members = 10;
    cfg.tree = ht_config(2, 2);
    AdaptiveRandomForest arf(cfg, 1);
    DriftStreamSpec spec;
    spec.seed = 10;
    spec.switch_position = 8000;
    spec.concept_b.flip = true;
    auto stream = generate_drift_stream(spec, 12000);
    std::size_t replacements_before_switch = 0;
    while (auto inst = stream->next()) {
        arf.learn_one(*inst);
        if (inst->sequence_number + 1 == spec.switch_position) {
            replacements_before_switch = arf.replacements();
        }
    }
    CHECK(arf.replacements() - replacements_before_switch >= 5);
    CHECK(arf.size() == 10); // members are replaced, never deleted
}

TEST_CASE("arf adapts where a frozen forest cannot") {
    ArfConfig cfg;
    cfg.n_members = 5;
    cfg.tree = ht_config(2, 2);
    AdaptiveRandomForest arf(cfg, 3);
    DriftStreamSpec spec;
    spec.seed = 11;
    spec.switch_position = 6000;
    spec.concept_b.flip = true;
    auto stream = generate_drift_stream(spec, 12000);
    double correct = 0;
    double counted = 0;
    while (auto inst = stream->next()) {
        if (inst->sequence_number >= 10000) {
            if (arf.predict_one(inst->features) == inst->label) correct += 1;
            counted += 1;
        }
        arf.learn_one(*inst);
    }
    CHECK(correct / counted > 0.9);
}

TEST_CASE("display ensemble labels build the right shapes") {
    const auto arf20 = build_ensemble_from_label("ARF(20)", 5, 18, 42);
    const auto* forest = dynamic_cast<const AdaptiveRandomForest*>(arf20.get());
    REQUIRE(forest != nullptr);
    CHECK(forest->size() == 20);

    const auto hat10 = build_ensemble_from_label("HAT(10)", 5, 18, 42);
    const auto* bag = dynamic_cast<const OzaBag*>(hat10.get());
    REQUIRE(bag != nullptr);
    CHECK(bag->size() == 10);

    const auto pair = build_ensemble_from_label("ARF + HAT", 5, 18, 42);
    const auto* vote = dynamic_cast<const VotingEnsemble*>(pair.get());
    REQUIRE(vote != nullptr);
    CHECK(vote->size() == 2);
    CHECK(dynamic_cast<const AdaptiveRandomForest*>(&vote->member(0)) != nullptr);

    CHECK_THROWS_AS(build_ensemble_from_label("ARF(30)", 5, 18, 42), ConfigError);
}

TEST_CASE("registry covers every advertised name and rejects typos") {
    for (const auto& name : model_registry_names()) {
        const auto model = build_model(name, 5, 18, 42);
        REQUIRE(model != nullptr);
        CHECK(model->num_classes() == 5);
    }
    CHECK_THROWS_WITH(build_model("haat", 5, 18, 42),
                      Catch::Matchers::ContainsSubstring("hat"));
    CHECK_THROWS_AS(build_model("ht", 5, 18, 42, nlohmann::json{{"bogus", 1}}), ConfigError);
}

TEST_CASE("ensembles are deterministic given config, seed and stream") {
    const auto run = [](std::uint64_t seed) {
        auto model = build_model("arf10", 2, 2, seed);
        DriftStreamSpec spec;
        spec.seed = 12;
        spec.noise_rate = 0.1;
        auto stream = generate_drift_stream(spec, 3000);
        std::vector<std::size_t> predictions;
        while (auto inst = stream->next()) {
            predictions.push_back(model->predict_one(inst->features));
            model->learn_one(*inst);
        }
        return predictions;
    };
    CHECK(run(42) == run(42));
    CHECK(run(42) != run(43));
}

TEST_CASE("ensemble probabilities satisfy the classifier contract") {
    for (const char* name : {"ht10", "arf10", "arf_hat", "hat_nb", "wm"}) {
        auto model = build_model(name, 2, 2, 7);
        DriftStreamSpec spec;
        spec.seed = 13;
        auto stream = generate_drift_stream(spec, 500);
        while (auto inst = stream->next()) model->learn_one(*inst);
        const auto p = model->predict_proba(std::vector<double>{1.0, 2.0});
        REQUIRE(p.size() == 2);
        double total = 0.0;
        for (double v : p) {
            CHECK(v >= 0.0);
            total += v;
        }
        CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
}
