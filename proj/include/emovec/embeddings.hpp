#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emovec {

// One row of a VectorSpace: the word, a view of its components, and the
// precomputed Euclidean norm.
struct WordVector {
    std::string_view word;
    std::span<const double> components;
    double norm;
};

enum class HeaderMode { yes, no, auto_detect };
enum class ParseMode { strict, lenient };

// Immutable word -> dense vector store. Rows keep file order, duplicate
// words keep the first occurrence, components are widened to double.
class VectorSpace {
public:
    std::size_t size() const { return words_.size(); }
    std::size_t dimension() const { return dimension_; }

    // Exact lookup. Case policy lives with the callers (see resolve_word).
    std::optional<std::size_t> find(std::string_view word) const;

    const std::string& word(std::size_t row) const { return words_[row]; }
    std::span<const double> row(std::size_t row) const {
        return {matrix_.data() + row * dimension_, dimension_};
    }
    double norm(std::size_t row) const { return norms_[row]; }
    bool is_zero_norm(std::size_t row) const { return norms_[row] == 0.0; }

    WordVector at(std::size_t row) const {
        return {words_[row], this->row(row), norms_[row]};
    }

    const std::vector<std::string>& vocabulary() const { return words_; }

    std::size_t duplicate_count() const { return duplicates_; }
    std::size_t zero_norm_count() const { return zero_norms_; }
    std::size_t skipped_line_count() const { return skipped_lines_; }

private:
    friend class VectorSpaceBuilder;
    VectorSpace() = default;

    std::size_t dimension_ = 0;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> matrix_;
    std::vector<double> norms_;
    std::size_t duplicates_ = 0;
    std::size_t zero_norms_ = 0;
    std::size_t skipped_lines_ = 0;
};

// Assembles a VectorSpace row by row; the loaders and tests use it.
class VectorSpaceBuilder {
public:
    explicit VectorSpaceBuilder(std::size_t dimension);

    // Returns false when the word was a duplicate (first occurrence kept).
    bool add(std::string_view word, std::span<const double> components);

    void note_skipped_line() { ++space_.skipped_lines_; }

    VectorSpace build();

private:
    VectorSpace space_;
    bool built_ = false;
};

// Text format: one `word c1 c2 ... cd` per line, optional `count dim`
// header. Under auto_detect the first line is a header iff it has exactly
// two integer fields. Lenient mode skips malformed lines instead of
// throwing (needed for a few stray lines in public GloVe releases).
VectorSpace load_text_vectors(std::istream& in, HeaderMode header = HeaderMode::auto_detect,
                              ParseMode mode = ParseMode::strict);

// word2vec binary format: ASCII `count dim\n` header, then per record a
// space-terminated word followed by `dim` little-endian float32 values,
// optionally preceded by a linefeed.
VectorSpace load_word2vec_binary(std::istream& in);

VectorSpace load_vectors_file(const std::string& path, bool binary,
                              HeaderMode header = HeaderMode::auto_detect,
                              ParseMode mode = ParseMode::strict);

// Writes the text format back out, losslessly at 64-bit precision.
void save_text_vectors(const VectorSpace& space, std::ostream& out, bool with_header);

// cos(a, b) clamped to [-1, 1]. Throws DegenerateVectorError on zero norm,
// ArgumentError on dimension mismatch.
double cosine(const WordVector& a, const WordVector& b);
double cosine(std::span<const double> a, double norm_a, std::span<const double> b,
              double norm_b);

// Verbatim lookup, then ASCII-lowercase fallback.
std::optional<std::size_t> resolve_word(const VectorSpace& space, std::string_view word);

enum class RankDirection { highest, lowest };

struct RankedWord {
    std::string word;  // the space's stored word
    double similarity;
};

struct RankStats {
    std::size_t candidates = 0;  // resolvable, nonzero-norm, deduplicated
    std::size_t skipped = 0;     // unresolvable or zero-norm candidates
};

// Exactly k entries ordered by similarity to `anchor` (descending for
// highest, ascending for lowest); ties broken by ascending byte order of
// the word. Matches a full-sort oracle. `candidate_vocab` defaults to the
// whole vocabulary; external candidates are resolved with resolve_word and
// unresolvable ones are skipped.
std::vector<RankedWord> rank_by_similarity(
    const VectorSpace& space, std::string_view anchor, std::size_t k,
    RankDirection direction,
    std::span<const std::string> candidate_vocab = {},
    RankStats* stats = nullptr);

}  // namespace emovec
