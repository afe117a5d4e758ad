#include "emovec/selfsup.hpp"

#include <unordered_set>

#include "emovec/error.hpp"
#include "emovec/rng.hpp"
#include "emovec/util.hpp"

namespace emovec {

ExtremeSets select_extremes(const VectorSpace& space, const EmotionInventory& inventory,
                            std::string_view emotion, std::size_t k,
                            std::span<const std::string> candidate_vocab,
                            std::string_view source_vocab_tag) {
    if (k == 0) {
        throw ArgumentError("select_extremes: k must be positive");
    }
    const EmotionLabel& label = inventory.label(emotion);

    RankStats stats;
    std::vector<RankedWord> top = rank_by_similarity(space, label.anchor_word, k,
                                                     RankDirection::highest, candidate_vocab,
                                                     &stats);
    if (2 * k > stats.candidates) {
        throw ArgumentError("select_extremes: 2k = " + std::to_string(2 * k) +
                            " exceeds the " + std::to_string(stats.candidates) +
                            " usable candidates");
    }

    // Over-fetch the low end so that words tied across the boundary (already
    // claimed by the positives) can be passed over deterministically.
    std::vector<RankedWord> low = rank_by_similarity(space, label.anchor_word, 2 * k,
                                                     RankDirection::lowest, candidate_vocab);
    std::unordered_set<std::string_view> taken;
    for (const RankedWord& rw : top) taken.insert(rw.word);

    ExtremeSets sets;
    sets.emotion = std::string(emotion);
    sets.k = k;
    sets.source_vocab_tag = std::string(source_vocab_tag);
    for (const RankedWord& rw : top) sets.positives.push_back({rw.word, rw.similarity});
    for (const RankedWord& rw : low) {
        if (sets.negatives.size() == k) break;
        if (taken.count(rw.word)) continue;
        sets.negatives.push_back({rw.word, rw.similarity});
    }
    return sets;
}

std::string_view target_rule_name(TargetRule rule) {
    return rule == TargetRule::unsupervised_scores ? "unsupervised-scores" : "binary";
}

std::vector<ScoredWord> build_training_set(const ExtremeSets& sets, TargetRule rule) {
    std::vector<ScoredWord> instances;
    instances.reserve(sets.positives.size() + sets.negatives.size());
    for (const ScoredWord& sw : sets.positives) {
        instances.push_back({sw.word, rule == TargetRule::binary ? 1.0 : sw.score});
    }
    for (const ScoredWord& sw : sets.negatives) {
        instances.push_back({sw.word, rule == TargetRule::binary ? 0.0 : sw.score});
    }
    return instances;
}

SelfSupervisedResult train_self_supervised(const VectorSpace& space,
                                           const EmotionInventory& inventory, std::size_t k,
                                           ModelKind kind, const TrainConfig& config,
                                           std::span<const std::string> candidate_vocab,
                                           TargetRule rule) {
    SelfSupervisedResult result;
    for (const EmotionLabel& label : inventory.labels()) {
        ExtremeSets sets = select_extremes(space, inventory, label.name, k, candidate_vocab);
        std::vector<ScoredWord> instances = build_training_set(sets, rule);

        std::vector<LabeledVector> data;
        data.reserve(instances.size());
        for (const ScoredWord& inst : instances) {
            // Ranked words are the space's own vocabulary; exact lookup holds.
            auto row = space.find(inst.word);
            if (!row) {
                throw ConfigError("ranked word '" + inst.word + "' vanished from the space");
            }
            auto vec = space.row(*row);
            data.push_back({{vec.begin(), vec.end()}, inst.score});
        }

        TrainConfig per_emotion = config;
        per_emotion.seed = derive_seed(config.seed, label.name);

        EmotionTrainStats stats;
        stats.train_size = data.size();
        RegressionModel model;
        if (kind == ModelKind::ffnn) {
            FfnnTrainStats ffnn_stats;
            model = RegressionModel(train_ffnn(data, per_emotion, &ffnn_stats));
            stats.final_training_mse = ffnn_stats.final_mse;
        } else {
            SvrModel svr = train_svr(data, per_emotion);
            stats.svr_converged = svr.converged;
            double sum = 0.0;
            for (const LabeledVector& sample : data) {
                double diff = predict_svr(svr, sample.features) - sample.target;
                sum += diff * diff;
            }
            stats.final_training_mse = sum / static_cast<double>(data.size());
            model = RegressionModel(std::move(svr));
        }

        result.trained.models.emplace(label.name, std::move(model));
        result.trained.stats.emplace(label.name, stats);
        result.extremes.push_back(std::move(sets));
    }
    return result;
}

void write_extremes_tsv(const ExtremeSets& sets, std::ostream& out) {
    for (const ScoredWord& sw : sets.positives) {
        out << sw.word << '\t' << format_double(sw.score) << "\tpos\n";
    }
    for (const ScoredWord& sw : sets.negatives) {
        out << sw.word << '\t' << format_double(sw.score) << "\tneg\n";
    }
}

}  // namespace emovec
