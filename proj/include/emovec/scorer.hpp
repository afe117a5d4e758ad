#pragma once

#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emovec/embeddings.hpp"
#include "emovec/lexicon.hpp"
#include "emovec/regressors.hpp"

namespace emovec {

struct EmotionLabel {
    std::string name;
    std::string anchor_word;  // the single vocabulary word standing in for the emotion
};

// Ordered label set. Order is fixed at construction and drives reporting
// and tie-breaking everywhere downstream. An optional neutral label sits
// outside the scored set: it is assigned by thresholding, never by anchor
// similarity.
class EmotionInventory {
public:
    EmotionInventory() = default;
    explicit EmotionInventory(std::vector<EmotionLabel> labels, std::string neutral_label = "");

    // anger, anticipation, disgust, fear, joy, sadness, surprise, trust —
    // each label anchored by its own name.
    static EmotionInventory plutchik_eight();

    const std::vector<EmotionLabel>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool contains(std::string_view name) const;
    const EmotionLabel& label(std::string_view name) const;  // ConfigError when absent

    bool has_neutral() const { return !neutral_label_.empty(); }
    const std::string& neutral_label() const { return neutral_label_; }

    std::vector<std::string> names() const;

private:
    std::vector<EmotionLabel> labels_;
    std::string neutral_label_;
};

// One label per line, `#` comments; `label TAB anchor` overrides the
// default anchor (the label itself lowercased). A line equal to
// `neutral_name` becomes the inventory's neutral label.
EmotionInventory load_inventory(std::istream& in, std::string_view neutral_name = "neutral");
EmotionInventory load_inventory_file(const std::string& path,
                                     std::string_view neutral_name = "neutral");

struct ScoreResult {
    double value = 0.0;
    bool resolved = false;  // false when the word fell back to the OOV policy
};

// Uniform scoring contract: a frozen, pure function over (word, emotion).
// Unresolvable words never throw; they take the OOV policy value.
class Scorer {
public:
    virtual ~Scorer() = default;

    double score(std::string_view word, std::string_view emotion) const {
        return score_checked(word, emotion).value;
    }
    virtual ScoreResult score_checked(std::string_view word, std::string_view emotion) const = 0;

    // Whether this scorer can score the emotion at all. Scoring an
    // uncovered emotion is a hard error, not an OOV case.
    virtual bool covers(std::string_view emotion) const = 0;

    double oov_policy() const { return oov_policy_; }

protected:
    explicit Scorer(double oov_policy) : oov_policy_(oov_policy) {}
    double oov_policy_;
};

// Cosine similarity against the emotion's anchor vector. Anchors are
// resolved eagerly at construction: a missing or zero-norm anchor
// invalidates the whole emotion and raises ConfigError naming it.
class UnsupervisedScorer : public Scorer {
public:
    UnsupervisedScorer(const VectorSpace& space, EmotionInventory inventory,
                       double oov_policy = 0.0);

    ScoreResult score_checked(std::string_view word, std::string_view emotion) const override;
    bool covers(std::string_view emotion) const override;

    const EmotionInventory& inventory() const { return inventory_; }
    const VectorSpace& space() const { return *space_; }

private:
    const VectorSpace* space_;
    EmotionInventory inventory_;
    std::map<std::string, std::size_t, std::less<>> anchor_rows_;
};

// Applies the per-emotion trained model to the word's vector. Outputs are
// not clamped; unresolvable words skip the model entirely.
class ModelScorer : public Scorer {
public:
    ModelScorer(const VectorSpace& space, std::map<std::string, RegressionModel> models,
                double oov_policy = 0.0);

    ScoreResult score_checked(std::string_view word, std::string_view emotion) const override;
    bool covers(std::string_view emotion) const override;

    const std::map<std::string, RegressionModel>& models() const { return models_; }

private:
    const VectorSpace* space_;
    std::map<std::string, RegressionModel> models_;
};

// Direct lookup in an intensity lexicon; misses take the OOV policy.
class LexiconScorer : public Scorer {
public:
    explicit LexiconScorer(const IntensityLexicon& lexicon, double oov_policy = 0.0);

    ScoreResult score_checked(std::string_view word, std::string_view emotion) const override;
    bool covers(std::string_view emotion) const override;

private:
    const IntensityLexicon* lexicon_;
};

// Free-function forms of the three scoring rules, for callers that do not
// want to hold a Scorer. The class versions delegate to these semantics.
double unsupervised_score(const VectorSpace& space, const EmotionInventory& inventory,
                          std::string_view word, std::string_view emotion);
double model_score(const std::map<std::string, RegressionModel>& models,
                   const VectorSpace& space, std::string_view word, std::string_view emotion);
double lexicon_lookup_score(const IntensityLexicon& lexicon, std::string_view word,
                            std::string_view emotion);

struct GeneratedLexicon {
    IntensityLexicon lexicon;         // scores clamped to [0, 1] for storage
    std::vector<LexiconEntry> raw;    // pre-clamp values, same order
    std::size_t clamped_count = 0;
};

// One entry per (emotion, word), ordered by (inventory order, word byte
// order); duplicate vocabulary words collapse to one. Deterministic:
// identical inputs produce byte-identical files.
GeneratedLexicon generate_lexicon(const Scorer& scorer, const EmotionInventory& inventory,
                                  std::span<const std::string> vocabulary);

// `term TAB emotion TAB score` in entry order, same shape as the input
// intensity TSV.
void write_lexicon_tsv(std::span<const LexiconEntry> entries, std::ostream& out);

}  // namespace emovec
