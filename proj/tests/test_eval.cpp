#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "emovec/error.hpp"
#include "emovec/eval.hpp"
#include "emovec/rng.hpp"
#include "support/oracles.hpp"

using namespace emovec;
using emovec::testing::pearson_reference;

namespace {

// Scores from a fixed table; everything else takes the OOV policy.
class TableScorer : public Scorer {
public:
    TableScorer(std::map<std::string, double> values, double oov_policy = 0.0)
        : Scorer(oov_policy), values_(std::move(values)) {}

    ScoreResult score_checked(std::string_view word, std::string_view) const override {
        auto it = values_.find(std::string(word));
        if (it == values_.end()) return {oov_policy_, false};
        return {it->second, true};
    }
    bool covers(std::string_view) const override { return true; }

private:
    std::map<std::string, double> values_;
};

class ConstantScorer : public Scorer {
public:
    explicit ConstantScorer(double value) : Scorer(0.0), value_(value) {}
    ScoreResult score_checked(std::string_view, std::string_view) const override {
        return {value_, true};
    }
    bool covers(std::string_view) const override { return true; }

private:
    double value_;
};

// Covers only the listed emotions; scores by gold-table lookup.
class PartialScorer : public Scorer {
public:
    PartialScorer(std::map<std::string, double> values, std::vector<std::string> emotions)
        : Scorer(0.0), values_(std::move(values)), emotions_(std::move(emotions)) {}

    ScoreResult score_checked(std::string_view word, std::string_view emotion) const override {
        if (!covers(emotion)) throw ConfigError("uncovered emotion");
        auto it = values_.find(std::string(word));
        if (it == values_.end()) return {oov_policy_, false};
        return {it->second, true};
    }
    bool covers(std::string_view emotion) const override {
        for (const std::string& e : emotions_) {
            if (e == emotion) return true;
        }
        return false;
    }

private:
    std::map<std::string, double> values_;
    std::vector<std::string> emotions_;
};

IntensityLexicon two_emotion_lexicon(std::size_t per_emotion) {
    IntensityLexicon lexicon;
    for (const std::string& emotion : {"joy", "fear"}) {
        for (std::size_t i = 0; i < per_emotion; ++i) {
            lexicon.add(emotion + "_w" + std::to_string(i), emotion,
                        double(i % 11) / 10.0);
        }
    }
    return lexicon;
}

}  // namespace

TEST_CASE("pearson hand values") {
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}).r ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}).r ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4}).r ==
          doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("pearson matches the textbook formula on random data") {
    emovec::SplitMix64 rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> xs(30), ys(30);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = rng.next_double(-5.0, 5.0);
            ys[i] = 0.3 * xs[i] + rng.next_double(-1.0, 1.0);
        }
        CHECK(pearson(xs, ys).r ==
              doctest::Approx(pearson_reference(xs, ys)).epsilon(1e-9));
    }
}

TEST_CASE("pearson argument validation") {
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1}),
                    ArgumentError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), ArgumentError);
    CHECK_THROWS_AS(pearson(std::vector<double>{}, std::vector<double>{}), ArgumentError);
}

TEST_CASE("pearson degenerates to 0.0 with a flag on zero variance") {
    PearsonResult flat = pearson(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3});
    CHECK(flat.r == 0.0);
    CHECK(flat.degenerate);
    PearsonResult both = pearson(std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 5});
    CHECK(both.degenerate);
    PearsonResult fine = pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 4});
    CHECK(!fine.degenerate);
}

TEST_CASE("pearson is affine invariant and self-correlation is 1") {
    std::vector<double> xs = {0.3, -1.2, 4.5, 2.2, 0.0, -0.7};
    std::vector<double> ys = {1.0, 0.2, 3.3, 2.9, 1.1, 0.4};
    const double base = pearson(xs, ys).r;
    std::vector<double> scaled(xs.size()), negated(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        scaled[i] = 7.5 * xs[i] + 3.0;
        negated[i] = -2.0 * xs[i] + 1.0;
    }
    CHECK(std::fabs(pearson(scaled, ys).r - base) < 1e-9);
    CHECK(std::fabs(pearson(negated, ys).r + base) < 1e-9);
    CHECK(pearson(xs, xs).r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(xs, xs).r <= 1.0);  // the clamp holds exactly
}

TEST_CASE("a gold-lookup scorer evaluates to r = 1.0 everywhere") {
    IntensityLexicon lexicon = two_emotion_lexicon(15);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 4, SplitRatios{});
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) table[entry.word] = entry.score;
    TableScorer scorer(table);

    EvalReport report = evaluate_scorer(scorer, data_split, Partition::test);
    CHECK(report.emotion_order == std::vector<std::string>{"joy", "fear"});
    for (const std::string& emotion : report.emotion_order) {
        CHECK(report.per_emotion.at(emotion).r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(report.per_emotion.at(emotion).oov == 0);
    }
    CHECK(report.overall_r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.overall_pairs == data_split.partition_count(Partition::test));
    CHECK(!report.partial_coverage);
    CHECK(report.runs == 1);
}

TEST_CASE("a constant scorer is degenerate on every emotion") {
    IntensityLexicon lexicon = two_emotion_lexicon(10);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 4, SplitRatios{});
    ConstantScorer scorer(0.5);
    EvalReport report = evaluate_scorer(scorer, data_split, Partition::test);
    for (const std::string& emotion : report.emotion_order) {
        CHECK(report.per_emotion.at(emotion).r == 0.0);
        CHECK(report.per_emotion.at(emotion).degenerate);
    }
    CHECK(report.overall_degenerate);
}

TEST_CASE("OOV pairs are scored by policy and retained, never dropped") {
    IntensityLexicon lexicon = two_emotion_lexicon(10);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 4, SplitRatios{});
    // Only joy words resolve; every fear word is OOV.
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) {
        if (entry.emotion == "joy") table[entry.word] = entry.score;
    }
    TableScorer scorer(table);
    EvalReport report = evaluate_scorer(scorer, data_split, Partition::test);

    const EmotionEval& fear = report.per_emotion.at("fear");
    CHECK(fear.pairs == data_split.partition("fear", Partition::test).size());
    CHECK(fear.oov == fear.pairs);
    CHECK(fear.degenerate);  // all predictions are the 0.0 policy
    CHECK(report.overall_pairs == data_split.partition_count(Partition::test));
}

TEST_CASE("evaluating an empty partition fails loudly") {
    IntensityLexicon lexicon;
    lexicon.add("a", "joy", 0.1);
    lexicon.add("b", "joy", 0.9);
    DataSplit data_split = split(lexicon, {"joy"}, 0, SplitRatios{});
    REQUIRE(data_split.partition("joy", Partition::validation).empty());
    ConstantScorer scorer(0.5);
    CHECK_THROWS_AS(evaluate_scorer(scorer, data_split, Partition::validation), ConfigError);
}

TEST_CASE("partial coverage skips uncovered emotions and flags the report") {
    IntensityLexicon lexicon = two_emotion_lexicon(12);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 6, SplitRatios{});
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) table[entry.word] = entry.score;
    PartialScorer scorer(table, {"joy"});

    EvalReport report = evaluate_scorer(scorer, data_split, Partition::test);
    CHECK(report.partial_coverage);
    CHECK(report.emotion_order == std::vector<std::string>{"joy"});
    CHECK(report.per_emotion.count("fear") == 0);
    CHECK(report.overall_pairs == data_split.partition("joy", Partition::test).size());

    PartialScorer nothing(table, {});
    CHECK_THROWS_AS(evaluate_scorer(nothing, data_split, Partition::test), ConfigError);
}

TEST_CASE("multi-run aggregation: means, stds, and identities") {
    IntensityLexicon lexicon = two_emotion_lexicon(12);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 6, SplitRatios{});
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) table[entry.word] = entry.score;

    // Seed-dependent noise on top of the gold table makes run rs differ.
    ScorerFactory noisy = [&](std::uint64_t seed) -> std::unique_ptr<Scorer> {
        std::map<std::string, double> jittered = table;
        emovec::SplitMix64 rng(seed + 1);
        for (auto& [word, value] : jittered) value += rng.next_double(-0.2, 0.2);
        return std::make_unique<TableScorer>(jittered);
    };

    EvalReport report = evaluate_multi_run(noisy, data_split, Partition::test, 5);
    CHECK(report.runs == 5);
    REQUIRE(report.run_overall_rs.size() == 5);

    double mean = 0.0, variance = 0.0;
    for (double r : report.run_overall_rs) mean += r;
    mean /= 5.0;
    for (double r : report.run_overall_rs) variance += (r - mean) * (r - mean);
    variance /= 5.0;
    CHECK(std::fabs(report.overall_r - mean) < 1e-12);
    CHECK(report.overall_std == doctest::Approx(std::sqrt(variance)).epsilon(1e-9));
    CHECK(report.overall_std > 0.0);

    for (const std::string& emotion : report.emotion_order) {
        REQUIRE(report.run_emotion_rs.at(emotion).size() == 5);
        double emotion_mean = 0.0;
        for (double r : report.run_emotion_rs.at(emotion)) emotion_mean += r;
        emotion_mean /= 5.0;
        CHECK(std::fabs(report.per_emotion.at(emotion).r - emotion_mean) < 1e-12);
    }
}

TEST_CASE("a deterministic trainer has zero std across runs") {
    IntensityLexicon lexicon = two_emotion_lexicon(10);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 3, SplitRatios{});
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) table[entry.word] = entry.score;
    ScorerFactory fixed = [&](std::uint64_t) -> std::unique_ptr<Scorer> {
        return std::make_unique<TableScorer>(table);
    };
    EvalReport report = evaluate_multi_run(fixed, data_split, Partition::test, 4);
    CHECK(report.overall_std == 0.0);
    for (const auto& [emotion, value] : report.per_emotion_std) CHECK(value == 0.0);
}

TEST_CASE("runs=1 multi-run equals the single evaluation") {
    IntensityLexicon lexicon = two_emotion_lexicon(10);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 3, SplitRatios{});
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) table[entry.word] = entry.score;
    TableScorer direct(table);
    ScorerFactory factory = [&](std::uint64_t) -> std::unique_ptr<Scorer> {
        return std::make_unique<TableScorer>(table);
    };
    EvalReport single = evaluate_scorer(direct, data_split, Partition::test);
    EvalReport multi = evaluate_multi_run(factory, data_split, Partition::test, 1);
    CHECK(multi.runs == 1);
    CHECK(multi.overall_r == single.overall_r);
    CHECK(multi.overall_pairs == single.overall_pairs);
    for (const std::string& emotion : single.emotion_order) {
        CHECK(multi.per_emotion.at(emotion).r == single.per_emotion.at(emotion).r);
    }
}

TEST_CASE("custom seeds must match the run count") {
    IntensityLexicon lexicon = two_emotion_lexicon(8);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 3, SplitRatios{});
    ScorerFactory factory = [&](std::uint64_t) -> std::unique_ptr<Scorer> {
        return std::make_unique<ConstantScorer>(0.5);
    };
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    CHECK_THROWS_AS(
        evaluate_multi_run(factory, data_split, Partition::test, 2, seeds), ArgumentError);
    EvalReport report = evaluate_multi_run(factory, data_split, Partition::test, 3, seeds);
    CHECK(report.runs == 3);
}

TEST_CASE("report JSON and table rendering carry the core fields") {
    IntensityLexicon lexicon = two_emotion_lexicon(10);
    DataSplit data_split = split(lexicon, {"joy", "fear"}, 3, SplitRatios{});
    std::map<std::string, double> table;
    for (const LexiconEntry& entry : lexicon.entries()) table[entry.word] = entry.score;
    TableScorer scorer(table);
    EvalReport report = evaluate_scorer(scorer, data_split, Partition::test);

    std::string json = report_to_json(report, {{"vectors_sha256", "deadbeef"}});
    CHECK(json.find("\"joy\"") != std::string::npos);
    CHECK(json.find("\"overall\"") != std::string::npos);
    CHECK(json.find("deadbeef") != std::string::npos);

    std::string rendered = render_table(report);
    CHECK(rendered.find("joy") != std::string::npos);
    CHECK(rendered.find("fear") != std::string::npos);
    CHECK(rendered.find("Overall") != std::string::npos);
}
