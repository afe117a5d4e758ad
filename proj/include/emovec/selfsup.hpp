#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emovec/embeddings.hpp"
#include "emovec/regressors.hpp"
#include "emovec/scorer.hpp"

namespace emovec {

// The k highest- and k lowest-scoring words for one emotion under the
// unsupervised scorer. Disjoint; every positive scores at least as high as
// every negative.
struct ExtremeSets {
    std::string emotion;
    std::vector<ScoredWord> positives;  // descending score
    std::vector<ScoredWord> negatives;  // ascending score
    std::size_t k = 0;
    std::string source_vocab_tag;
};

// Ranks the candidate vocabulary (default: the whole space) against the
// emotion's anchor in both directions. Requires 2k <= usable candidates.
// Ties follow rank_by_similarity's lexicographic rule; a tie spanning the
// positive/negative boundary resolves in favor of the positives, keeping
// the sets disjoint.
ExtremeSets select_extremes(const VectorSpace& space, const EmotionInventory& inventory,
                            std::string_view emotion, std::size_t k,
                            std::span<const std::string> candidate_vocab = {},
                            std::string_view source_vocab_tag = "");

// What the induced instances carry as regression targets: the unsupervised
// scores themselves (default), or 1 for positives / 0 for negatives.
enum class TargetRule { unsupervised_scores, binary };

std::string_view target_rule_name(TargetRule rule);

// Exactly 2k (word, target) instances: positives first, then negatives,
// each in its set's order.
std::vector<ScoredWord> build_training_set(const ExtremeSets& sets,
                                           TargetRule rule = TargetRule::unsupervised_scores);

struct SelfSupervisedResult {
    TrainedModels trained;
    std::vector<ExtremeSets> extremes;  // inventory order
};

// The full self-supervised pipeline: per emotion, select extremes, build
// the induced training set, and fit the chosen regressor. Takes no gold
// lexicon anywhere — supervision comes entirely from the space itself.
SelfSupervisedResult train_self_supervised(const VectorSpace& space,
                                           const EmotionInventory& inventory, std::size_t k,
                                           ModelKind kind, const TrainConfig& config,
                                           std::span<const std::string> candidate_vocab = {},
                                           TargetRule rule = TargetRule::unsupervised_scores);

// `word TAB score TAB {pos|neg}`, positives first.
void write_extremes_tsv(const ExtremeSets& sets, std::ostream& out);

}  // namespace emovec
