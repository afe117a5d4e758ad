#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emovec/scorer.hpp"

namespace emovec {

// Lowercased maximal runs of letters/digits; apostrophes survive between
// run characters, every other byte splits. Bytes >= 0x80 count as letters,
// so multi-byte UTF-8 stays intact (unlowercased).
std::vector<std::string> tokenize(std::string_view text);

struct Document {
    std::string id;
    std::string raw_text;
    std::vector<std::string> tokens;
    std::vector<std::string> gold_labels;  // distinct; may include the neutral label
};

// Frozen document collection with the document-frequency statistics behind
// TF-IDF. Statistics come from the evaluation corpus itself; the setting
// admits no training data.
class Corpus {
public:
    explicit Corpus(std::vector<Document> documents);

    const std::vector<Document>& documents() const { return documents_; }
    std::size_t doc_count() const { return documents_.size(); }
    std::size_t document_frequency(std::string_view token) const;

private:
    std::vector<Document> documents_;
    std::unordered_map<std::string, std::size_t> df_;
};

// `text TAB comma-separated-labels TAB id` per line. Label tokens that are
// all digits index into `label_names` (when provided); anything else is a
// label name, validated against `label_names` when provided.
Corpus load_corpus_tsv(std::istream& in, std::span<const std::string> label_names = {});
Corpus load_corpus_file(const std::string& path, std::span<const std::string> label_names = {});

// tf(token, doc) * (ln((1 + N)/(1 + df)) + 1), raw counts, smoothed idf.
double tfidf_weight(const Corpus& corpus, const Document& doc, std::string_view token);

struct ClassifierConfig {
    double neutral_threshold = 0.03;
    bool normalized = true;  // divide sums by the document's total TF-IDF mass
};

// TF-IDF-weighted aggregate of word-level unsupervised scores for one
// label; normalized form is the weighted mean. Empty documents score 0.
double label_score(const UnsupervisedScorer& scorer, const Corpus& corpus, const Document& doc,
                   std::string_view emotion, bool normalized = true);

struct Classification {
    std::string label;
    double mean_score = 0.0;  // mean label score before thresholding
    double top_score = 0.0;   // the argmax label's score
};

// Scores every label in the inventory; documents whose mean label score
// falls at or below the threshold take the inventory's neutral label,
// otherwise the argmax wins with ties broken by inventory order.
Classification classify(const UnsupervisedScorer& scorer, const Corpus& corpus,
                        const Document& doc, const ClassifierConfig& config);

// Classification per document id, corpus order preserved under the map.
std::map<std::string, Classification> classify_corpus(const UnsupervisedScorer& scorer,
                                                      const Corpus& corpus,
                                                      const ClassifierConfig& config);

// Seeded uniform choice over the label universe, one draw per document in
// corpus order.
std::map<std::string, std::string> random_predictions(const Corpus& corpus,
                                                      std::span<const std::string> label_universe,
                                                      std::uint64_t seed);

struct LabelMetrics {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MacroMetrics {
    std::vector<std::string> label_order;
    std::map<std::string, LabelMetrics> per_label;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::size_t doc_count = 0;
};

// Single-label predictions against multi-label gold: a prediction is a true
// positive when it appears in the document's gold set. Macro averages are
// unweighted means over the full label universe, 0/0 defined as 0.
MacroMetrics evaluate_classification(const std::map<std::string, std::string>& predictions,
                                     const std::map<std::string, std::vector<std::string>>& gold,
                                     std::span<const std::string> label_universe);

std::string metrics_to_json(const MacroMetrics& metrics);

// `id TAB predicted_label TAB mean_score TAB top_score`, corpus order.
void write_predictions_tsv(const Corpus& corpus,
                           const std::map<std::string, Classification>& predictions,
                           std::ostream& out);

}  // namespace emovec
