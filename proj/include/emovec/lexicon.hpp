#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emovec {

struct LexiconEntry {
    std::string word;
    std::string emotion;
    double score;  // in [0, 1]
};

// Ground-truth or generated word/emotion intensity triples. Unigrams only;
// (word, emotion) pairs unique; scores in [0, 1].
class IntensityLexicon {
public:
    IntensityLexicon() = default;
    explicit IntensityLexicon(std::string provenance) : provenance_(std::move(provenance)) {}

    void add(std::string word, std::string emotion, double score);

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::optional<double> find(std::string_view word, std::string_view emotion) const;
    bool has_emotion(std::string_view emotion) const;

    // Distinct emotions in first-seen order.
    const std::vector<std::string>& emotions() const { return emotion_order_; }

    const std::string& provenance() const { return provenance_; }
    std::size_t bigram_dropped_count() const { return bigrams_dropped_; }

private:
    friend IntensityLexicon load_intensity_tsv(std::istream&, std::string, bool);

    std::vector<LexiconEntry> entries_;
    std::map<std::pair<std::string, std::string>, std::size_t> index_;
    std::vector<std::string> emotion_order_;
    std::unordered_map<std::string, std::size_t> emotion_counts_;
    std::string provenance_;
    std::size_t bigrams_dropped_ = 0;
};

// `term TAB emotion TAB score` lines, UTF-8, `#` comments. Multi-token
// terms are dropped and counted; scores must lie in [0, 1]. With
// binary_scores, the score field must be exactly `0` or `1`.
IntensityLexicon load_intensity_tsv(std::istream& in, std::string provenance = "",
                                    bool binary_scores = false);

// EmoLex-style `term TAB emotion TAB {0|1}` lines.
IntensityLexicon load_binary_lexicon(std::istream& in, std::string provenance = "");

IntensityLexicon load_lexicon_file(const std::filesystem::path& path,
                                   bool binary_scores = false);

struct SplitRatios {
    double train = 0.64;
    double validation = 0.16;
    double test = 0.20;
};

struct ScoredWord {
    std::string word;
    double score;
};

struct EmotionPartitions {
    std::vector<ScoredWord> train;
    std::vector<ScoredWord> validation;
    std::vector<ScoredWord> test;
};

enum class Partition { train, validation, test };

std::string_view partition_name(Partition p);

// Deterministic per-emotion train/validation/test partitions. Regenerating
// with the same lexicon, seed, and ratios is byte-identical: each emotion's
// entries are shuffled by a SplitMix64 stream seeded with
// splitmix64(seed ^ fnv1a64(emotion)) and cut floor/floor/remainder.
struct DataSplit {
    std::vector<std::string> emotion_order;
    std::unordered_map<std::string, EmotionPartitions> by_emotion;
    std::uint64_t seed = 0;
    SplitRatios ratios;
    std::string source_sha256;

    const std::vector<ScoredWord>& partition(const std::string& emotion, Partition p) const;
    std::size_t total_count() const;
    std::size_t partition_count(Partition p) const;
};

DataSplit split(const IntensityLexicon& lexicon, const std::vector<std::string>& emotions,
                std::uint64_t seed, SplitRatios ratios);

// One `<emotion>.<partition>.tsv` per pair plus split_manifest.json.
void write_split(const DataSplit& split, const std::filesystem::path& directory);

DataSplit read_split(const std::filesystem::path& directory);

}  // namespace emovec
