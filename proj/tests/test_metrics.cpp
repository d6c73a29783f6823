#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace rill;
using rill::testing::make_instance;
using rill::testing::tiny_schema;

TEST_CASE("confusion matrix counts updates") {
    ConfusionMatrix cm(3);
    cm.update(0, 0);
    CHECK(cm.at(0, 0) == 1);
    CHECK(cm.total() == 1);
    for (int i = 0; i < 99; ++i) cm.update(1, 2);
    CHECK(cm.total() == 100);
    CHECK_THROWS_AS(cm.update(3, 0), DomainError);
    CHECK_THROWS_AS(cm.update(0, 7), DomainError);
}

TEST_CASE("confusion matrix equals a batch recount of the same log") {
    std::mt19937_64 rng(7);
    const std::size_t C = 5;
    ConfusionMatrix cm(C);
    std::vector<std::vector<std::uint64_t>> tally(C, std::vector<std::uint64_t>(C, 0));
    for (int i = 0; i < 5000; ++i) {
        const std::size_t a = rng() % C;
        const std::size_t p = rng() % C;
        cm.update(a, p);
        tally[a][p] += 1;
    }
    for (std::size_t a = 0; a < C; ++a) {
        for (std::size_t p = 0; p < C; ++p) {
            CHECK(cm.at(a, p) == tally[a][p]);
        }
    }
}

TEST_CASE("binary collapse follows the attack-vs-normal definition") {
    // classes: 0=Normal, 1=Blackhole, 2=Grayhole, 3=Flooding, 4=Scheduling
    ConfusionMatrix cm(5);
    for (int i = 0; i < 7; ++i) cm.update(2, 1);  // Grayhole detected as Blackhole
    for (int i = 0; i < 3; ++i) cm.update(0, 3);  // Normal flagged as Flooding
    for (int i = 0; i < 11; ++i) cm.update(0, 0); // Normal as Normal
    for (int i = 0; i < 2; ++i) cm.update(4, 0);  // Scheduling missed
    const BinaryCounts b = binary_collapse(cm, 0);
    CHECK(b.tp == 7);
    CHECK(b.fp == 3);
    CHECK(b.tn == 11);
    CHECK(b.fn == 2);
}

TEST_CASE("binary collapse of a diagonal matrix has no errors") {
    ConfusionMatrix cm(4);
    for (std::size_t c = 0; c < 4; ++c) {
        for (int i = 0; i < 5; ++i) cm.update(c, c);
    }
    const BinaryCounts b = binary_collapse(cm, 0);
    CHECK(b.fp == 0);
    CHECK(b.fn == 0);
    CHECK(b.tp == 15);
    CHECK(b.tn == 5);
}

TEST_CASE("binary collapse conserves mass on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t C = 2 + rng() % 5;
        ConfusionMatrix cm(C);
        const int n = 1 + static_cast<int>(rng() % 400);
        for (int i = 0; i < n; ++i) cm.update(rng() % C, rng() % C);
        const BinaryCounts b = binary_collapse(cm, rng() % C);
        CHECK(b.total() == cm.total());
    }
}

TEST_CASE("metric formulas match the worked example") {
    const MetricsReport m = compute_metrics({9000, 1000, 500, 89500});
    REQUIRE(m.accuracy);
    REQUIRE(m.precision);
    REQUIRE(m.recall);
    REQUIRE(m.f1);
    CHECK_THAT(*m.accuracy, Catch::Matchers::WithinAbs(0.985, 1e-12));
    CHECK_THAT(*m.precision, Catch::Matchers::WithinAbs(9000.0 / 9500.0, 1e-12));
    CHECK_THAT(*m.recall, Catch::Matchers::WithinAbs(0.9, 1e-12));
    CHECK_THAT(*m.f1, Catch::Matchers::WithinAbs(12.0 / 13.0, 1e-12));
}

TEST_CASE("perfect classifier scores 1 on all four metrics") {
    const MetricsReport m = compute_metrics({100, 0, 0, 900});
    CHECK(*m.accuracy == 1.0);
    CHECK(*m.precision == 1.0);
    CHECK(*m.recall == 1.0);
    CHECK(*m.f1 == 1.0);
}

TEST_CASE("zero denominators yield undefined, never zero") {
    const MetricsReport m = compute_metrics({0, 10, 0, 90});
    REQUIRE(m.recall);
    CHECK(*m.recall == 0.0);
    CHECK_FALSE(m.precision);
    CHECK_FALSE(m.f1);
    const MetricsReport empty = compute_metrics({0, 0, 0, 0});
    CHECK_FALSE(empty.accuracy);
    CHECK_FALSE(empty.precision);
    CHECK_FALSE(empty.recall);
    CHECK_FALSE(empty.f1);
}

namespace {

// independent direct-formula oracle for the randomized identity check
struct OracleMetrics {
    double acc, p, r, f1;
    bool p_def, r_def, f1_def;
};

OracleMetrics oracle_from(std::uint64_t tp, std::uint64_t fn, std::uint64_t fp,
                          std::uint64_t tn) {
    OracleMetrics o{};
    o.acc = double(tp + tn) / double(tp + fn + fp + tn);
    o.p_def = tp + fp > 0;
    if (o.p_def) o.p = double(tp) / double(tp + fp);
    o.r_def = tp + fn > 0;
    if (o.r_def) o.r = double(tp) / double(tp + fn);
    o.f1_def = o.p_def && o.r_def && (o.p + o.r) > 0;
    if (o.f1_def) o.f1 = 2 * o.p * o.r / (o.p + o.r);
    return o;
}

} // namespace

TEST_CASE("metric identities hold on randomized confusion matrices") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t C = 2 + rng() % 5;
        ConfusionMatrix cm(C);
        const int n = 1 + static_cast<int>(rng() % 300);
        for (int i = 0; i < n; ++i) cm.update(rng() % C, rng() % C);
        const BinaryCounts b = binary_collapse(cm, 0);
        const MetricsReport m = compute_metrics(b);
        const OracleMetrics o = oracle_from(b.tp, b.fn, b.fp, b.tn);
        REQUIRE(m.accuracy);
        CHECK_THAT(*m.accuracy, Catch::Matchers::WithinAbs(o.acc, 1e-12));
        CHECK(m.precision.has_value() == o.p_def);
        if (o.p_def) CHECK_THAT(*m.precision, Catch::Matchers::WithinAbs(o.p, 1e-12));
        CHECK(m.recall.has_value() == o.r_def);
        if (o.r_def) CHECK_THAT(*m.recall, Catch::Matchers::WithinAbs(o.r, 1e-12));
        CHECK(m.f1.has_value() == o.f1_def);
        if (o.f1_def) CHECK_THAT(*m.f1, Catch::Matchers::WithinAbs(o.f1, 1e-12));
        // harmonic-mean identity
        if (m.f1) {
            CHECK_THAT(*m.f1, Catch::Matchers::WithinAbs(
                                  2.0 * *m.precision * *m.recall / (*m.precision + *m.recall),
                                  1e-12));
        }
    }
}

TEST_CASE("per-class metrics: perfect two-class matrix") {
    ConfusionMatrix cm(2);
    for (int i = 0; i < 5; ++i) {
        cm.update(0, 0);
        cm.update(1, 1);
    }
    const PerClassMetrics pc = per_class_metrics(cm);
    for (const auto& m : pc.per_class) {
        CHECK(*m.precision == 1.0);
        CHECK(*m.recall == 1.0);
        CHECK(*m.f1 == 1.0);
    }
    CHECK(*pc.macro.f1 == 1.0);
}

TEST_CASE("per-class metrics: worked 2x2 example") {
    ConfusionMatrix cm(2);
    for (int i = 0; i < 8; ++i) cm.update(0, 0);
    for (int i = 0; i < 2; ++i) cm.update(0, 1);
    for (int i = 0; i < 4; ++i) cm.update(1, 0);
    for (int i = 0; i < 6; ++i) cm.update(1, 1);
    const PerClassMetrics pc = per_class_metrics(cm);
    CHECK_THAT(*pc.per_class[0].precision, Catch::Matchers::WithinAbs(8.0 / 12.0, 1e-12));
    CHECK_THAT(*pc.per_class[0].recall, Catch::Matchers::WithinAbs(0.8, 1e-12));
    CHECK_THAT(*pc.per_class[1].precision, Catch::Matchers::WithinAbs(0.75, 1e-12));
    CHECK_THAT(*pc.per_class[1].recall, Catch::Matchers::WithinAbs(0.6, 1e-12));
    // macro recall is the unweighted mean of per-class recalls
    CHECK_THAT(*pc.macro.recall, Catch::Matchers::WithinAbs((0.8 + 0.6) / 2.0, 1e-12));
}

TEST_CASE("windowed accuracy covers the stream with a partial tail") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> log(250, {1, 1});
    const auto series = windowed_accuracy(log, 100);
    REQUIRE(series.size() == 3);
    CHECK(series[0].end_index == 100);
    CHECK(series[1].end_index == 200);
    CHECK(series[2].end_index == 250);
    for (const auto& w : series) CHECK(w.accuracy == 1.0);
}

TEST_CASE("windowed accuracy on exact alternation") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> log;
    for (int i = 0; i < 20; ++i) {
        log.push_back({0, static_cast<std::uint32_t>(i % 2)}); // correct, wrong, ...
    }
    for (const auto& w : windowed_accuracy(log, 2)) CHECK(w.accuracy == 0.5);
}

TEST_CASE("overall accuracy equals the count-weighted mean of windows") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> log;
        const std::size_t n = 1 + rng() % 2000;
        std::size_t correct = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t a = rng() % 3;
            const std::uint32_t p = rng() % 3;
            log.push_back({a, p});
            if (a == p) ++correct;
        }
        const std::size_t window = 1 + rng() % 100;
        double weighted = 0.0;
        std::size_t prev_end = 0;
        for (const auto& w : windowed_accuracy(log, window)) {
            weighted += w.accuracy * static_cast<double>(w.end_index - prev_end);
            prev_end = w.end_index;
        }
        CHECK(prev_end == n);
        CHECK_THAT(weighted / static_cast<double>(n),
                   Catch::Matchers::WithinAbs(static_cast<double>(correct) /
                                                  static_cast<double>(n),
                                              1e-12));
    }
}

namespace {

/// Spy proving the test-then-train order: it fails the test if learn_one
/// arrives without a preceding predict for the same position.
class SpyLearner final : public Classifier {
public:
    explicit SpyLearner(std::size_t num_classes) : num_classes_(num_classes) {}

    std::size_t num_classes() const override { return num_classes_; }

    void learn_one(const Instance&) override {
        ++learns_;
        if (learns_ > predicts_) ordering_violated_ = true;
    }

    std::vector<double> predict_proba(std::span<const double>) const override {
        ++predicts_;
        if (predicts_ != learns_ + 1) ordering_violated_ = true;
        return uniform_proba(num_classes_);
    }

    bool ordering_violated() const { return ordering_violated_; }
    std::size_t predicts() const { return predicts_; }
    std::size_t learns() const { return learns_; }

private:
    std::size_t num_classes_;
    mutable std::size_t predicts_ = 0;
    std::size_t learns_ = 0;
    mutable bool ordering_violated_ = false;
};

} // namespace

TEST_CASE("prequential run predicts strictly before learning, every instance") {
    std::vector<Instance> data;
    for (int i = 0; i < 500; ++i) {
        data.push_back(make_instance({double(i), 0.0}, i % 2, i));
    }
    MemoryStream stream(tiny_schema(), data, 2);
    SpyLearner spy(2);
    const auto report = prequential_run(stream, spy, 100);
    CHECK_FALSE(spy.ordering_violated());
    CHECK(spy.predicts() == 500);
    CHECK(spy.learns() == 500);
    CHECK(report.total == 500);
    CHECK(report.confusion.total() == 500);
}

TEST_CASE("no-change baseline traces the worked example") {
    std::vector<Instance> data;
    const std::size_t labels[] = {0, 0, 1, 1};
    for (int i = 0; i < 4; ++i) data.push_back(make_instance({0.0, 0.0}, labels[i], i));
    MemoryStream stream(tiny_schema(), data, 2);
    NoChangeBaseline model(2);
    const auto report = prequential_run(stream, model, 10);
    // predictions 0,0,0,1 -> 3 of 4 correct
    const MetricsReport m = compute_metrics(binary_collapse(report.confusion, 0));
    CHECK_THAT(*m.accuracy, Catch::Matchers::WithinAbs(0.75, 1e-12));
}

TEST_CASE("empty stream gives an empty, undefined report") {
    MemoryStream stream(tiny_schema(), {}, 2);
    NoChangeBaseline model(2);
    const auto report = prequential_run(stream, model, 10);
    CHECK(report.total == 0);
    CHECK(report.windows.empty());
    const MetricsReport m = compute_metrics(binary_collapse(report.confusion, 0));
    CHECK_FALSE(m.accuracy);
}

namespace {

class ThrowingLearner final : public Classifier {
public:
    std::size_t num_classes() const override { return 2; }
    void learn_one(const Instance& inst) override {
        if (inst.sequence_number == 3) throw std::runtime_error("boom");
    }
    std::vector<double> predict_proba(std::span<const double>) const override {
        return uniform_proba(2);
    }
};

} // namespace

TEST_CASE("a failing model aborts the run with the instance index") {
    std::vector<Instance> data;
    for (int i = 0; i < 10; ++i) data.push_back(make_instance({0.0, 0.0}, 0, i));
    MemoryStream stream(tiny_schema(), data, 2);
    ThrowingLearner model;
    CHECK_THROWS_WITH(prequential_run(stream, model, 5),
                      Catch::Matchers::ContainsSubstring("instance 3"));
}

TEST_CASE("prequential timing is non-negative") {
    std::vector<Instance> data;
    for (int i = 0; i < 100; ++i) data.push_back(make_instance({1.0, 2.0}, i % 2, i));
    MemoryStream stream(tiny_schema(), data, 2);
    MajorityClassBaseline model(2);
    const auto report = prequential_run(stream, model, 10);
    CHECK(report.elapsed_seconds >= 0.0);
}
