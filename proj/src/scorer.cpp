#include "emovec/scorer.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "emovec/error.hpp"
#include "emovec/util.hpp"

namespace emovec {

EmotionInventory::EmotionInventory(std::vector<EmotionLabel> labels, std::string neutral_label)
    : labels_(std::move(labels)), neutral_label_(std::move(neutral_label)) {
    std::set<std::string_view> seen;
    for (const EmotionLabel& label : labels_) {
        if (label.name.empty() || !seen.insert(label.name).second) {
            throw ConfigError("inventory labels must be unique and non-empty");
        }
        if (!is_unigram(label.anchor_word) || label.anchor_word.empty()) {
            throw ConfigError("anchor for label '" + label.name + "' must be a single token");
        }
        if (label.name == neutral_label_) {
            throw ConfigError("neutral label '" + neutral_label_ + "' cannot also be scored");
        }
    }
}

EmotionInventory EmotionInventory::plutchik_eight() {
    std::vector<EmotionLabel> labels;
    for (const char* name : {"anger", "anticipation", "disgust", "fear", "joy", "sadness",
                             "surprise", "trust"}) {
        labels.push_back({name, name});
    }
    return EmotionInventory(std::move(labels));
}

bool EmotionInventory::contains(std::string_view name) const {
    return std::any_of(labels_.begin(), labels_.end(),
                       [&](const EmotionLabel& l) { return l.name == name; });
}

const EmotionLabel& EmotionInventory::label(std::string_view name) const {
    for (const EmotionLabel& l : labels_) {
        if (l.name == name) return l;
    }
    throw ConfigError("unknown emotion label: " + std::string(name));
}

std::vector<std::string> EmotionInventory::names() const {
    std::vector<std::string> out;
    out.reserve(labels_.size());
    for (const EmotionLabel& l : labels_) out.push_back(l.name);
    return out;
}

EmotionInventory load_inventory(std::istream& in, std::string_view neutral_name) {
    std::vector<EmotionLabel> labels;
    std::string neutral;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_on(line, '\t');
        if (fields.size() > 2) {
            throw ParseError("expected `label` or `label TAB anchor`", line_no);
        }
        std::string name(fields[0]);
        if (name == neutral_name) {
            if (fields.size() == 2) {
                throw ParseError("the neutral label takes no anchor", line_no);
            }
            neutral = name;
            continue;
        }
        std::string anchor = fields.size() == 2 ? std::string(fields[1]) : ascii_lower(name);
        labels.push_back({std::move(name), std::move(anchor)});
    }
    if (labels.empty()) {
        throw ParseError("labels file declares no scored labels");
    }
    return EmotionInventory(std::move(labels), std::move(neutral));
}

EmotionInventory load_inventory_file(const std::string& path, std::string_view neutral_name) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open labels file: " + path);
    }
    return load_inventory(in, neutral_name);
}

UnsupervisedScorer::UnsupervisedScorer(const VectorSpace& space, EmotionInventory inventory,
                                       double oov_policy)
    : Scorer(oov_policy), space_(&space), inventory_(std::move(inventory)) {
    for (const EmotionLabel& label : inventory_.labels()) {
        auto row = resolve_word(space, label.anchor_word);
        if (!row) {
            throw ConfigError("anchor word '" + label.anchor_word + "' for emotion '" +
                              label.name + "' is not in the vector space");
        }
        if (space.is_zero_norm(*row)) {
            throw ConfigError("anchor word '" + label.anchor_word + "' for emotion '" +
                              label.name + "' has a zero-norm vector");
        }
        anchor_rows_.emplace(label.name, *row);
    }
}

ScoreResult UnsupervisedScorer::score_checked(std::string_view word,
                                              std::string_view emotion) const {
    auto anchor = anchor_rows_.find(emotion);
    if (anchor == anchor_rows_.end()) {
        throw ConfigError("unknown emotion label: " + std::string(emotion));
    }
    auto row = resolve_word(*space_, word);
    if (!row || space_->is_zero_norm(*row)) {
        return {oov_policy_, false};
    }
    double value = cosine(space_->row(*row), space_->norm(*row), space_->row(anchor->second),
                          space_->norm(anchor->second));
    return {value, true};
}

bool UnsupervisedScorer::covers(std::string_view emotion) const {
    return anchor_rows_.find(emotion) != anchor_rows_.end();
}

ModelScorer::ModelScorer(const VectorSpace& space, std::map<std::string, RegressionModel> models,
                         double oov_policy)
    : Scorer(oov_policy), space_(&space), models_(std::move(models)) {
    for (const auto& [emotion, model] : models_) {
        if (model.input_dim() != space.dimension()) {
            throw ConfigError("model for emotion '" + emotion + "' expects dimension " +
                              std::to_string(model.input_dim()) + ", space has " +
                              std::to_string(space.dimension()));
        }
    }
}

ScoreResult ModelScorer::score_checked(std::string_view word, std::string_view emotion) const {
    auto it = models_.find(std::string(emotion));
    if (it == models_.end()) {
        throw ConfigError("no trained model for emotion: " + std::string(emotion));
    }
    auto row = resolve_word(*space_, word);
    if (!row || space_->is_zero_norm(*row)) {
        return {oov_policy_, false};
    }
    return {it->second.predict(space_->row(*row)), true};
}

bool ModelScorer::covers(std::string_view emotion) const {
    return models_.find(std::string(emotion)) != models_.end();
}

LexiconScorer::LexiconScorer(const IntensityLexicon& lexicon, double oov_policy)
    : Scorer(oov_policy), lexicon_(&lexicon) {}

ScoreResult LexiconScorer::score_checked(std::string_view word, std::string_view emotion) const {
    if (auto value = lexicon_->find(word, emotion)) {
        return {*value, true};
    }
    std::string lowered = ascii_lower(word);
    if (lowered != word) {
        if (auto value = lexicon_->find(lowered, emotion)) {
            return {*value, true};
        }
    }
    return {oov_policy_, false};
}

bool LexiconScorer::covers(std::string_view emotion) const {
    return lexicon_->has_emotion(emotion);
}

double unsupervised_score(const VectorSpace& space, const EmotionInventory& inventory,
                          std::string_view word, std::string_view emotion) {
    const EmotionLabel& label = inventory.label(emotion);
    auto anchor = resolve_word(space, label.anchor_word);
    if (!anchor) {
        throw ConfigError("anchor word '" + label.anchor_word + "' for emotion '" + label.name +
                          "' is not in the vector space");
    }
    if (space.is_zero_norm(*anchor)) {
        throw ConfigError("anchor word '" + label.anchor_word + "' for emotion '" + label.name +
                          "' has a zero-norm vector");
    }
    auto row = resolve_word(space, word);
    if (!row || space.is_zero_norm(*row)) return 0.0;
    return cosine(space.row(*row), space.norm(*row), space.row(*anchor), space.norm(*anchor));
}

double model_score(const std::map<std::string, RegressionModel>& models, const VectorSpace& space,
                   std::string_view word, std::string_view emotion) {
    auto it = models.find(std::string(emotion));
    if (it == models.end()) {
        throw ConfigError("no trained model for emotion: " + std::string(emotion));
    }
    auto row = resolve_word(space, word);
    if (!row || space.is_zero_norm(*row)) return 0.0;
    return it->second.predict(space.row(*row));
}

double lexicon_lookup_score(const IntensityLexicon& lexicon, std::string_view word,
                            std::string_view emotion) {
    return LexiconScorer(lexicon).score(word, emotion);
}

GeneratedLexicon generate_lexicon(const Scorer& scorer, const EmotionInventory& inventory,
                                  std::span<const std::string> vocabulary) {
    if (vocabulary.empty()) {
        throw ArgumentError("generate_lexicon: vocabulary must be non-empty");
    }
    std::vector<std::string> words(vocabulary.begin(), vocabulary.end());
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (const std::string& word : words) {
        if (word.empty() || !is_unigram(word)) {
            throw ArgumentError("vocabulary word is not a unigram: '" + word + "'");
        }
    }

    GeneratedLexicon out;
    for (const EmotionLabel& label : inventory.labels()) {
        for (const std::string& word : words) {
            double raw = scorer.score(word, label.name);
            double stored = std::clamp(raw, 0.0, 1.0);
            if (stored != raw) ++out.clamped_count;
            out.lexicon.add(word, label.name, stored);
            out.raw.push_back({word, label.name, raw});
        }
    }
    return out;
}

void write_lexicon_tsv(std::span<const LexiconEntry> entries, std::ostream& out) {
    for (const LexiconEntry& entry : entries) {
        out << entry.word << '\t' << entry.emotion << '\t' << format_double(entry.score) << '\n';
    }
}

}  // namespace emovec
