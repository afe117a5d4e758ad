#include "emovec/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emovec/error.hpp"
#include "emovec/rng.hpp"
#include "emovec/util.hpp"

namespace emovec {

namespace {

// nlohmann/json is vendored as json.hpp; alias for readability.
using json = nlohmann::json;

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

void IntensityLexicon::add(std::string word, std::string emotion, double score) {
    if (!is_unigram(word)) {
        throw ArgumentError("lexicon word must be a unigram: '" + word + "'");
    }
    if (!(score >= 0.0 && score <= 1.0)) {
        throw ArgumentError("lexicon score out of [0,1]: " + format_double(score));
    }
    auto key = std::make_pair(word, emotion);
    if (index_.contains(key)) {
        throw ArgumentError("duplicate (word, emotion) pair: (" + word + ", " + emotion + ")");
    }
    index_.emplace(std::move(key), entries_.size());
    if (!emotion_counts_.contains(emotion)) {
        emotion_order_.push_back(emotion);
    }
    ++emotion_counts_[emotion];
    entries_.push_back({std::move(word), std::move(emotion), score});
}

std::optional<double> IntensityLexicon::find(std::string_view word,
                                             std::string_view emotion) const {
    auto it = index_.find(std::make_pair(std::string(word), std::string(emotion)));
    if (it == index_.end()) return std::nullopt;
    return entries_[it->second].score;
}

bool IntensityLexicon::has_emotion(std::string_view emotion) const {
    return emotion_counts_.contains(std::string(emotion));
}

IntensityLexicon load_intensity_tsv(std::istream& in, std::string provenance,
                                    bool binary_scores) {
    IntensityLexicon lexicon(std::move(provenance));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        auto fields = split_on(line, '\t');
        if (fields.size() != 3) {
            throw ParseError("expected `term TAB emotion TAB score`, found " +
                                 std::to_string(fields.size()) + " fields",
                             line_no);
        }
        std::string term(fields[0]);
        std::string emotion(fields[1]);
        if (term.empty() || emotion.empty()) {
            throw ParseError("empty term or emotion field", line_no);
        }
        if (!is_unigram(emotion)) {
            throw ParseError("emotion label must be a single token: '" + emotion + "'",
                             line_no);
        }
        double score = 0.0;
        if (binary_scores) {
            if (fields[2] == "0") {
                score = 0.0;
            } else if (fields[2] == "1") {
                score = 1.0;
            } else {
                throw ParseError("binary lexicon value must be 0 or 1, found '" +
                                     std::string(fields[2]) + "'",
                                 line_no);
            }
        } else {
            auto value = parse_double(fields[2]);
            if (!value || !std::isfinite(*value)) {
                throw ParseError("unparsable score '" + std::string(fields[2]) + "'", line_no);
            }
            if (*value < 0.0 || *value > 1.0) {
                throw ParseError("score out of [0,1]: " + std::string(fields[2]), line_no);
            }
            score = *value;
        }
        if (!is_unigram(term)) {
            // "heart break" and friends: drop multi-token terms, keep count.
            ++lexicon.bigrams_dropped_;
            continue;
        }
        try {
            lexicon.add(std::move(term), std::move(emotion), score);
        } catch (const ArgumentError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return lexicon;
}

IntensityLexicon load_binary_lexicon(std::istream& in, std::string provenance) {
    return load_intensity_tsv(in, std::move(provenance), /*binary_scores=*/true);
}

IntensityLexicon load_lexicon_file(const std::filesystem::path& path, bool binary_scores) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open lexicon file: " + path.string());
    }
    return load_intensity_tsv(in, path.filename().string(), binary_scores);
}

std::string_view partition_name(Partition p) {
    switch (p) {
        case Partition::train: return "train";
        case Partition::validation: return "validation";
        case Partition::test: return "test";
    }
    return "?";
}

const std::vector<ScoredWord>& DataSplit::partition(const std::string& emotion,
                                                    Partition p) const {
    auto it = by_emotion.find(emotion);
    if (it == by_emotion.end()) {
        throw ArgumentError("no partitions for emotion '" + emotion + "'");
    }
    switch (p) {
        case Partition::train: return it->second.train;
        case Partition::validation: return it->second.validation;
        case Partition::test: return it->second.test;
    }
    throw ArgumentError("invalid partition");
}

std::size_t DataSplit::total_count() const {
    std::size_t total = 0;
    for (const auto& [emotion, parts] : by_emotion) {
        total += parts.train.size() + parts.validation.size() + parts.test.size();
    }
    return total;
}

std::size_t DataSplit::partition_count(Partition p) const {
    std::size_t total = 0;
    for (const std::string& emotion : emotion_order) {
        total += partition(emotion, p).size();
    }
    return total;
}

DataSplit split(const IntensityLexicon& lexicon, const std::vector<std::string>& emotions,
                std::uint64_t seed, SplitRatios ratios) {
    if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 ||
        std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
        throw ArgumentError("split ratios must be nonnegative and sum to 1");
    }
    DataSplit result;
    result.seed = seed;
    result.ratios = ratios;
    result.emotion_order = emotions;

    for (const std::string& emotion : emotions) {
        if (!lexicon.has_emotion(emotion)) {
            throw ConfigError("emotion absent from lexicon: '" + emotion + "'");
        }
        std::vector<ScoredWord> items;
        for (const LexiconEntry& entry : lexicon.entries()) {
            if (entry.emotion == emotion) {
                items.push_back({entry.word, entry.score});
            }
        }
        SplitMix64 gen(derive_seed(seed, emotion));
        seeded_shuffle(items, gen);

        std::size_t n = items.size();
        std::size_t n_train = static_cast<std::size_t>(std::floor(ratios.train * double(n)));
        std::size_t n_val = static_cast<std::size_t>(std::floor(ratios.validation * double(n)));
        if (n_train + n_val > n) n_val = n - n_train;  // ratio rounding guard

        EmotionPartitions parts;
        parts.train.assign(items.begin(), items.begin() + std::ptrdiff_t(n_train));
        parts.validation.assign(items.begin() + std::ptrdiff_t(n_train),
                                items.begin() + std::ptrdiff_t(n_train + n_val));
        parts.test.assign(items.begin() + std::ptrdiff_t(n_train + n_val), items.end());
        result.by_emotion.emplace(emotion, std::move(parts));
    }
    return result;
}

namespace {

std::string partition_tsv(const std::string& emotion, const std::vector<ScoredWord>& words) {
    std::string out;
    for (const ScoredWord& sw : words) {
        out += sw.word;
        out += '\t';
        out += emotion;
        out += '\t';
        out += format_double(sw.score);
        out += '\n';
    }
    return out;
}

}  // namespace

void write_split(const DataSplit& split, const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) {
        throw IoError("cannot create split directory " + directory.string() + ": " +
                      ec.message());
    }

    json counts = json::object();
    for (const std::string& emotion : split.emotion_order) {
        const EmotionPartitions& parts = split.by_emotion.at(emotion);
        for (Partition p : {Partition::train, Partition::validation, Partition::test}) {
            const auto& words = split.partition(emotion, p);
            std::string name = emotion + "." + std::string(partition_name(p)) + ".tsv";
            atomic_write_file(directory / name, partition_tsv(emotion, words));
        }
        counts[emotion] = {{"train", parts.train.size()},
                           {"validation", parts.validation.size()},
                           {"test", parts.test.size()}};
    }

    json manifest = {
        {"seed", split.seed},
        {"ratios", {split.ratios.train, split.ratios.validation, split.ratios.test}},
        {"emotions", split.emotion_order},
        {"counts", counts},
        {"source_sha256", split.source_sha256},
    };
    atomic_write_file(directory / "split_manifest.json", manifest.dump(2) + "\n");
}

DataSplit read_split(const std::filesystem::path& directory) {
    std::filesystem::path manifest_path = directory / "split_manifest.json";
    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        throw ParseError("invalid split manifest " + manifest_path.string() + ": " + e.what());
    }

    DataSplit result;
    try {
        result.seed = manifest.at("seed").get<std::uint64_t>();
        auto ratios = manifest.at("ratios");
        result.ratios = {ratios.at(0).get<double>(), ratios.at(1).get<double>(),
                         ratios.at(2).get<double>()};
        result.emotion_order = manifest.at("emotions").get<std::vector<std::string>>();
        result.source_sha256 = manifest.value("source_sha256", "");
    } catch (const json::exception& e) {
        throw ParseError("split manifest missing fields: " + std::string(e.what()));
    }

    for (const std::string& emotion : result.emotion_order) {
        EmotionPartitions parts;
        for (Partition p : {Partition::train, Partition::validation, Partition::test}) {
            std::string name = emotion + "." + std::string(partition_name(p)) + ".tsv";
            std::filesystem::path path = directory / name;
            std::ifstream in(path, std::ios::binary);
            if (!in) {
                throw IoError("missing split file: " + path.string());
            }
            std::vector<ScoredWord>& target = p == Partition::train        ? parts.train
                                              : p == Partition::validation ? parts.validation
                                                                           : parts.test;
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                line = strip_cr(line);
                if (line.empty()) continue;
                auto fields = split_on(line, '\t');
                if (fields.size() != 3 || fields[1] != emotion) {
                    throw ParseError("malformed split row in " + path.string(), line_no);
                }
                auto score = parse_double(fields[2]);
                if (!score) {
                    throw ParseError("unparsable score in " + path.string(), line_no);
                }
                target.push_back({std::string(fields[0]), *score});
            }
        }
        result.by_emotion.emplace(emotion, std::move(parts));
    }
    return result;
}

}  // namespace emovec
