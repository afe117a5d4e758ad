#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace emovec {

// SplitMix64 (Steele, Lea, Vigna). Every random draw in the toolkit flows
// through this generator so that splits, weight initialization, dropout
// masks, and baselines reproduce byte-identically on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, bound). Modulo reduction: the bias is
    // immaterial for our bounds (< 2^32) and keeps the draw rule trivial
    // to restate in other implementations.
    std::uint64_t next_below(std::uint64_t bound) {
        return next() % bound;
    }

private:
    std::uint64_t state_;
};

// FNV-1a, used to fold component names into derived seeds.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// Seed derivation rule: component seed = splitmix64(master ^ fnv1a64(tag)).
// An optional index salts per-run streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
    SplitMix64 gen(master ^ fnv1a64(tag) ^ (0x9e3779b97f4a7c15ULL * index));
    return gen.next();
}

// Fisher-Yates with next_below() draws; the documented shuffle for splits.
template <typename T>
void seeded_shuffle(std::vector<T>& items, SplitMix64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(gen.next_below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

}  // namespace emovec
