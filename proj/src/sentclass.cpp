#include "emovec/sentclass.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "emovec/error.hpp"
#include "emovec/rng.hpp"
#include "emovec/util.hpp"

namespace emovec {

namespace {

using json = nlohmann::json;

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c >= 0x80;
}

// Distinct terms of a document in first-occurrence order with raw counts.
// Shared by label_score and classify so their summation order agrees.
std::vector<std::pair<std::string_view, std::size_t>> count_terms(const Document& doc) {
    std::vector<std::pair<std::string_view, std::size_t>> terms;
    std::unordered_map<std::string_view, std::size_t> index;
    for (const std::string& token : doc.tokens) {
        auto [it, inserted] = index.emplace(token, terms.size());
        if (inserted) {
            terms.emplace_back(token, 1);
        } else {
            ++terms[it->second].second;
        }
    }
    return terms;
}

double idf(const Corpus& corpus, std::string_view token) {
    double n = static_cast<double>(corpus.doc_count());
    double df = static_cast<double>(corpus.document_frequency(token));
    return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

std::string trim_spaces(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    return std::string(text);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_word_byte(c)) {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                                   : static_cast<char>(c));
            continue;
        }
        bool apostrophe_inside = c == '\'' && !current.empty() && i + 1 < text.size() &&
                                 is_word_byte(static_cast<unsigned char>(text[i + 1]));
        if (apostrophe_inside) {
            current.push_back('\'');
            continue;
        }
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
    for (const Document& doc : documents_) {
        std::unordered_set<std::string_view> seen;
        for (const std::string& token : doc.tokens) {
            if (seen.insert(token).second) ++df_[token];
        }
    }
}

std::size_t Corpus::document_frequency(std::string_view token) const {
    auto it = df_.find(std::string(token));
    return it == df_.end() ? 0 : it->second;
}

Corpus load_corpus_tsv(std::istream& in, std::span<const std::string> label_names) {
    std::vector<Document> documents;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_on(line, '\t');
        if (fields.size() != 3) {
            throw ParseError("expected `text TAB labels TAB id`, got " +
                             std::to_string(fields.size()) + " fields", line_no);
        }
        Document doc;
        doc.raw_text = std::string(fields[0]);
        doc.id = std::string(fields[2]);
        if (doc.id.empty()) {
            throw ParseError("empty document id", line_no);
        }
        if (!ids.insert(doc.id).second) {
            throw ParseError("duplicate document id '" + doc.id + "'", line_no);
        }
        if (!fields[1].empty()) {
            std::set<std::string> seen;
            for (std::string_view raw : split_on(fields[1], ',')) {
                std::string token = trim_spaces(raw);
                if (token.empty()) {
                    throw ParseError("empty label token", line_no);
                }
                std::string name = token;
                bool numeric = std::all_of(token.begin(), token.end(),
                                           [](char c) { return c >= '0' && c <= '9'; });
                if (numeric && !label_names.empty()) {
                    auto index = parse_integer(token);
                    if (!index || *index < 0 ||
                        static_cast<std::size_t>(*index) >= label_names.size()) {
                        throw ParseError("label index " + token + " out of range", line_no);
                    }
                    name = label_names[static_cast<std::size_t>(*index)];
                } else if (!label_names.empty() &&
                           std::find(label_names.begin(), label_names.end(), name) ==
                               label_names.end()) {
                    throw ParseError("unknown label '" + name + "'", line_no);
                }
                if (seen.insert(name).second) {
                    doc.gold_labels.push_back(std::move(name));
                }
            }
        }
        doc.tokens = tokenize(doc.raw_text);
        documents.push_back(std::move(doc));
    }
    return Corpus(std::move(documents));
}

Corpus load_corpus_file(const std::string& path, std::span<const std::string> label_names) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open corpus file: " + path);
    }
    return load_corpus_tsv(in, label_names);
}

double tfidf_weight(const Corpus& corpus, const Document& doc, std::string_view token) {
    std::size_t tf = static_cast<std::size_t>(
        std::count(doc.tokens.begin(), doc.tokens.end(), token));
    if (tf == 0) return 0.0;
    return static_cast<double>(tf) * idf(corpus, token);
}

double label_score(const UnsupervisedScorer& scorer, const Corpus& corpus, const Document& doc,
                   std::string_view emotion, bool normalized) {
    double weight_sum = 0.0;
    double score_sum = 0.0;
    for (const auto& [term, count] : count_terms(doc)) {
        double gamma = static_cast<double>(count) * idf(corpus, term);
        weight_sum += gamma;
        score_sum += gamma * scorer.score(term, emotion);
    }
    if (!normalized) return score_sum;
    return weight_sum == 0.0 ? 0.0 : score_sum / weight_sum;
}

Classification classify(const UnsupervisedScorer& scorer, const Corpus& corpus,
                        const Document& doc, const ClassifierConfig& config) {
    const EmotionInventory& inventory = scorer.inventory();
    if (!inventory.has_neutral()) {
        throw ConfigError("classification requires an inventory with a neutral label");
    }
    const auto& labels = inventory.labels();
    std::vector<double> scores(labels.size(), 0.0);
    double weight_sum = 0.0;
    for (const auto& [term, count] : count_terms(doc)) {
        double gamma = static_cast<double>(count) * idf(corpus, term);
        weight_sum += gamma;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            scores[i] += gamma * scorer.score(term, labels[i].name);
        }
    }
    if (config.normalized && weight_sum != 0.0) {
        for (double& s : scores) s /= weight_sum;
    }

    double mean = 0.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        mean += scores[i];
        if (scores[i] > scores[best]) best = i;  // ties keep the earlier label
    }
    mean /= static_cast<double>(scores.size());

    Classification result;
    result.mean_score = mean;
    result.top_score = scores[best];
    result.label = mean <= config.neutral_threshold ? inventory.neutral_label()
                                                    : labels[best].name;
    return result;
}

std::map<std::string, Classification> classify_corpus(const UnsupervisedScorer& scorer,
                                                      const Corpus& corpus,
                                                      const ClassifierConfig& config) {
    std::map<std::string, Classification> out;
    for (const Document& doc : corpus.documents()) {
        out.emplace(doc.id, classify(scorer, corpus, doc, config));
    }
    return out;
}

std::map<std::string, std::string> random_predictions(const Corpus& corpus,
                                                      std::span<const std::string> label_universe,
                                                      std::uint64_t seed) {
    if (label_universe.empty()) {
        throw ArgumentError("random_predictions: empty label universe");
    }
    SplitMix64 gen(seed);
    std::map<std::string, std::string> out;
    for (const Document& doc : corpus.documents()) {
        out.emplace(doc.id, label_universe[gen.next_below(label_universe.size())]);
    }
    return out;
}

MacroMetrics evaluate_classification(const std::map<std::string, std::string>& predictions,
                                     const std::map<std::string, std::vector<std::string>>& gold,
                                     std::span<const std::string> label_universe) {
    if (predictions.size() != gold.size()) {
        throw ArgumentError("evaluate_classification: prediction and gold id sets differ");
    }
    std::unordered_set<std::string_view> universe(label_universe.begin(), label_universe.end());
    if (universe.size() != label_universe.size()) {
        throw ArgumentError("evaluate_classification: duplicate labels in the universe");
    }

    MacroMetrics metrics;
    metrics.label_order.assign(label_universe.begin(), label_universe.end());
    metrics.doc_count = predictions.size();
    for (const std::string& label : label_universe) {
        metrics.per_label.emplace(label, LabelMetrics{});
    }

    for (const auto& [id, predicted] : predictions) {
        auto gold_it = gold.find(id);
        if (gold_it == gold.end()) {
            throw ArgumentError("evaluate_classification: no gold labels for id '" + id + "'");
        }
        if (!universe.count(predicted)) {
            throw ArgumentError("predicted label '" + predicted + "' outside the universe");
        }
        const std::vector<std::string>& gold_set = gold_it->second;
        bool hit = std::find(gold_set.begin(), gold_set.end(), predicted) != gold_set.end();
        if (hit) {
            ++metrics.per_label.at(predicted).tp;
        } else {
            ++metrics.per_label.at(predicted).fp;
        }
        for (const std::string& g : gold_set) {
            if (!universe.count(g)) {
                throw ArgumentError("gold label '" + g + "' outside the universe");
            }
            if (g != predicted) ++metrics.per_label.at(g).fn;
        }
    }

    for (auto& [label, m] : metrics.per_label) {
        double tp = static_cast<double>(m.tp);
        m.precision = m.tp + m.fp == 0 ? 0.0 : tp / static_cast<double>(m.tp + m.fp);
        m.recall = m.tp + m.fn == 0 ? 0.0 : tp / static_cast<double>(m.tp + m.fn);
        m.f1 = m.precision + m.recall == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        metrics.macro_precision += m.precision;
        metrics.macro_recall += m.recall;
        metrics.macro_f1 += m.f1;
    }
    double count = static_cast<double>(metrics.per_label.size());
    metrics.macro_precision /= count;
    metrics.macro_recall /= count;
    metrics.macro_f1 /= count;
    return metrics;
}

std::string metrics_to_json(const MacroMetrics& metrics) {
    json per_label = json::object();
    for (const std::string& label : metrics.label_order) {
        const LabelMetrics& m = metrics.per_label.at(label);
        per_label[label] = {
            {"tp", m.tp},         {"fp", m.fp},       {"fn", m.fn},
            {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
        };
    }
    json doc = {
        {"per_label", per_label},
        {"label_order", metrics.label_order},
        {"macro",
         {{"precision", metrics.macro_precision},
          {"recall", metrics.macro_recall},
          {"f1", metrics.macro_f1}}},
        {"documents", metrics.doc_count},
    };
    return doc.dump(2) + "\n";
}

void write_predictions_tsv(const Corpus& corpus,
                           const std::map<std::string, Classification>& predictions,
                           std::ostream& out) {
    for (const Document& doc : corpus.documents()) {
        auto it = predictions.find(doc.id);
        if (it == predictions.end()) {
            throw ArgumentError("no prediction for document id '" + doc.id + "'");
        }
        const Classification& c = it->second;
        out << doc.id << '\t' << c.label << '\t' << format_double(c.mean_score) << '\t'
            << format_double(c.top_score) << '\n';
    }
}

}  // namespace emovec
