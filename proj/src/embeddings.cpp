#include "emovec/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "emovec/error.hpp"
#include "emovec/util.hpp"

namespace emovec {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

bool looks_like_header(std::string_view line) {
    auto fields = split_fields(line);
    if (fields.size() != 2) return false;
    auto count = parse_integer(fields[0]);
    auto dim = parse_integer(fields[1]);
    return count.has_value() && dim.has_value();
}

double euclidean_norm(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

}  // namespace

std::optional<std::size_t> VectorSpace::find(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VectorSpaceBuilder::VectorSpaceBuilder(std::size_t dimension) {
    if (dimension == 0) {
        throw ArgumentError("vector dimension must be positive");
    }
    space_.dimension_ = dimension;
}

bool VectorSpaceBuilder::add(std::string_view word, std::span<const double> components) {
    if (!is_unigram(word)) {
        throw ArgumentError("word must be a non-empty token without whitespace: '" +
                            std::string(word) + "'");
    }
    if (components.size() != space_.dimension_) {
        throw ArgumentError("component count mismatch for word '" + std::string(word) + "'");
    }
    std::string key(word);
    if (space_.index_.contains(key)) {
        ++space_.duplicates_;
        return false;
    }
    space_.index_.emplace(std::move(key), space_.words_.size());
    space_.words_.emplace_back(word);
    space_.matrix_.insert(space_.matrix_.end(), components.begin(), components.end());
    double norm = euclidean_norm(components);
    space_.norms_.push_back(norm);
    if (norm == 0.0) ++space_.zero_norms_;
    return true;
}

VectorSpace VectorSpaceBuilder::build() {
    if (built_) {
        throw ArgumentError("VectorSpaceBuilder::build called twice");
    }
    built_ = true;
    return std::move(space_);
}

VectorSpace load_text_vectors(std::istream& in, HeaderMode header, ParseMode mode) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> declared_count;

    // Header handling: consume the first non-blank line when it is one.
    std::optional<std::string> pending;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (split_fields(line).empty()) continue;  // blank line
        bool is_header = false;
        switch (header) {
            case HeaderMode::yes:
                if (!looks_like_header(line)) {
                    throw ParseError("expected `count dimension` header", line_no);
                }
                is_header = true;
                break;
            case HeaderMode::no:
                is_header = false;
                break;
            case HeaderMode::auto_detect:
                is_header = looks_like_header(line);
                break;
        }
        if (is_header) {
            auto fields = split_fields(line);
            long long count = *parse_integer(fields[0]);
            long long dim = *parse_integer(fields[1]);
            if (count < 0 || dim <= 0) {
                throw ParseError("header fields must be positive integers", line_no);
            }
            declared_count = static_cast<std::size_t>(count);
        } else {
            pending = line;
        }
        break;
    }

    std::optional<VectorSpaceBuilder> builder;
    std::size_t dimension = 0;
    std::size_t early_skips = 0;

    auto consume_line = [&](const std::string& data_line, std::size_t no) {
        auto fields = split_fields(data_line);
        if (fields.empty()) return;  // blank line
        if (fields.size() < 2) {
            if (mode == ParseMode::lenient) {
                if (builder) {
                    builder->note_skipped_line();
                } else {
                    ++early_skips;
                }
                return;
            }
            throw ParseError("expected `word c1 ... cd`", no);
        }
        if (!builder) {
            dimension = fields.size() - 1;
            builder.emplace(dimension);
            for (; early_skips > 0; --early_skips) builder->note_skipped_line();
        }
        if (fields.size() != dimension + 1) {
            if (mode == ParseMode::lenient) {
                builder->note_skipped_line();
                return;
            }
            throw ParseError("dimension mismatch: expected " + std::to_string(dimension) +
                                 " components, found " + std::to_string(fields.size() - 1),
                             no);
        }
        std::vector<double> components(dimension);
        for (std::size_t i = 0; i < dimension; ++i) {
            auto value = parse_double(fields[i + 1]);
            if (!value || !std::isfinite(*value)) {
                if (mode == ParseMode::lenient) {
                    builder->note_skipped_line();
                    return;
                }
                throw ParseError("unparsable or non-finite component '" +
                                     std::string(fields[i + 1]) + "'",
                                 no);
            }
            components[i] = *value;
        }
        builder->add(fields[0], components);
    };

    if (pending) consume_line(*pending, line_no);
    while (std::getline(in, line)) {
        ++line_no;
        consume_line(strip_cr(line), line_no);
    }

    if (!builder) {
        throw ParseError("empty input: no vector rows found");
    }
    VectorSpace space = builder->build();
    if (space.size() == 0) {
        throw ParseError("empty input: no vector rows found");
    }
    (void)declared_count;  // informational; actual rows win
    return space;
}

VectorSpace load_word2vec_binary(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw ParseError("empty input: missing word2vec header");
    }
    header = strip_cr(header);
    auto fields = split_fields(header);
    if (fields.size() != 2) {
        throw ParseError("word2vec header must be `count dimension`", 1);
    }
    auto count_val = parse_integer(fields[0]);
    auto dim_val = parse_integer(fields[1]);
    if (!count_val || !dim_val || *count_val < 0 || *dim_val <= 0) {
        throw ParseError("word2vec header fields must be positive integers", 1);
    }
    if (*count_val == 0) {
        throw ParseError("empty input: header declares zero records");
    }
    std::size_t count = static_cast<std::size_t>(*count_val);
    std::size_t dimension = static_cast<std::size_t>(*dim_val);

    VectorSpaceBuilder builder(dimension);
    std::vector<float> raw(dimension);
    std::vector<double> components(dimension);
    for (std::size_t record = 0; record < count; ++record) {
        std::string word;
        int c;
        // A linefeed between records is consumed and ignored.
        while ((c = in.get()) == '\n') {
        }
        while (c != ' ' && c != std::istream::traits_type::eof()) {
            word.push_back(static_cast<char>(c));
            c = in.get();
        }
        if (c == std::istream::traits_type::eof()) {
            throw ParseError("truncated stream in record " + std::to_string(record + 1) +
                             ": expected " + std::to_string(count) + " records, got " +
                             std::to_string(record));
        }
        if (word.empty()) {
            throw ParseError("empty word in record " + std::to_string(record + 1));
        }
        in.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(dimension * sizeof(float)));
        if (static_cast<std::size_t>(in.gcount()) != dimension * sizeof(float)) {
            throw ParseError("truncated stream in record " + std::to_string(record + 1) +
                             " ('" + word + "'): expected " +
                             std::to_string(dimension * sizeof(float)) +
                             " vector bytes, got " + std::to_string(in.gcount()));
        }
        for (std::size_t i = 0; i < dimension; ++i) {
            components[i] = static_cast<double>(raw[i]);
        }
        builder.add(word, components);
    }
    return builder.build();
}

VectorSpace load_vectors_file(const std::string& path, bool binary, HeaderMode header,
                              ParseMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open vector file: " + path);
    }
    return binary ? load_word2vec_binary(in) : load_text_vectors(in, header, mode);
}

void save_text_vectors(const VectorSpace& space, std::ostream& out, bool with_header) {
    if (with_header) {
        out << space.size() << ' ' << space.dimension() << '\n';
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << space.word(i);
        for (double x : space.row(i)) {
            out << ' ' << format_double(x);
        }
        out << '\n';
    }
}

double cosine(std::span<const double> a, double norm_a, std::span<const double> b,
              double norm_b) {
    if (a.size() != b.size()) {
        throw ArgumentError("cosine: dimension mismatch (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
    }
    if (norm_a == 0.0 || norm_b == 0.0) {
        throw DegenerateVectorError("cosine: zero-norm vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    double value = dot / (norm_a * norm_b);
    return std::clamp(value, -1.0, 1.0);
}

double cosine(const WordVector& a, const WordVector& b) {
    return cosine(a.components, a.norm, b.components, b.norm);
}

std::optional<std::size_t> resolve_word(const VectorSpace& space, std::string_view word) {
    if (auto row = space.find(word)) return row;
    std::string lowered = ascii_lower(word);
    if (lowered != word) {
        if (auto row = space.find(lowered)) return row;
    }
    return std::nullopt;
}

std::vector<RankedWord> rank_by_similarity(const VectorSpace& space, std::string_view anchor,
                                           std::size_t k, RankDirection direction,
                                           std::span<const std::string> candidate_vocab,
                                           RankStats* stats) {
    auto anchor_row = resolve_word(space, anchor);
    if (!anchor_row) {
        throw ConfigError("anchor word not in vector space: '" + std::string(anchor) + "'");
    }
    if (space.is_zero_norm(*anchor_row)) {
        throw DegenerateVectorError("anchor word has a zero-norm vector: '" +
                                    std::string(anchor) + "'");
    }
    std::span<const double> anchor_vec = space.row(*anchor_row);
    double anchor_norm = space.norm(*anchor_row);

    std::vector<std::size_t> rows;
    std::size_t skipped = 0;
    if (candidate_vocab.empty()) {
        rows.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (space.is_zero_norm(i)) {
                ++skipped;
                continue;
            }
            rows.push_back(i);
        }
    } else {
        std::vector<bool> seen(space.size(), false);
        rows.reserve(candidate_vocab.size());
        for (const std::string& word : candidate_vocab) {
            auto row = resolve_word(space, word);
            if (!row || space.is_zero_norm(*row)) {
                ++skipped;
                continue;
            }
            if (seen[*row]) continue;
            seen[*row] = true;
            rows.push_back(*row);
        }
    }
    if (stats) {
        stats->candidates = rows.size();
        stats->skipped = skipped;
    }
    if (k > rows.size()) {
        throw ArgumentError("k=" + std::to_string(k) + " exceeds candidate count " +
                            std::to_string(rows.size()));
    }

    struct Entry {
        double similarity;
        std::size_t row;
    };
    std::vector<Entry> entries;
    entries.reserve(rows.size());
    for (std::size_t row : rows) {
        double sim = cosine(space.row(row), space.norm(row), anchor_vec, anchor_norm);
        entries.push_back({sim, row});
    }

    auto better = [&](const Entry& a, const Entry& b) {
        if (a.similarity != b.similarity) {
            return direction == RankDirection::highest ? a.similarity > b.similarity
                                                       : a.similarity < b.similarity;
        }
        return space.word(a.row) < space.word(b.row);
    };
    std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k),
                      entries.end(), better);

    std::vector<RankedWord> result;
    result.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        result.push_back({space.word(entries[i].row), entries[i].similarity});
    }
    return result;
}

}  // namespace emovec
