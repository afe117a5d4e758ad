#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emovec/lexicon.hpp"
#include "emovec/scorer.hpp"

namespace emovec {

struct PearsonResult {
    double r = 0.0;
    bool degenerate = false;  // zero variance on either side; r forced to 0.0
};

// Sample Pearson correlation. Lengths must match and be >= 2.
PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

struct EmotionEval {
    double r = 0.0;
    std::size_t pairs = 0;
    std::size_t oov = 0;
    bool degenerate = false;
};

struct EvalReport {
    std::vector<std::string> emotion_order;  // covered emotions, reporting order
    std::map<std::string, EmotionEval> per_emotion;
    double overall_r = 0.0;          // over the union of all covered pairs
    std::size_t overall_pairs = 0;
    bool overall_degenerate = false;
    double mean_emotion_r = 0.0;     // unweighted mean of per-emotion rs
    bool partial_coverage = false;   // scorer covered only some split emotions

    // Multi-run aggregation; single evaluations leave runs = 1.
    std::size_t runs = 1;
    std::vector<double> run_overall_rs;
    std::map<std::string, std::vector<double>> run_emotion_rs;
    double overall_std = 0.0;
    std::map<std::string, double> per_emotion_std;
};

// The evaluation protocol: every pair of the chosen partition contributes
// exactly one (prediction, gold) point — unresolvable words score the OOV
// policy and are counted, never dropped. Overall is Pearson over the union
// of all covered emotions' pairs. Scorers covering only some emotions are
// evaluated on those alone and flagged.
EvalReport evaluate_scorer(const Scorer& scorer, const DataSplit& split, Partition partition);

// Builds a scorer per seed, evaluates each, and reports per-emotion and
// overall means with standard deviations. Per-run values are retained.
using ScorerFactory = std::function<std::unique_ptr<Scorer>(std::uint64_t seed)>;

EvalReport evaluate_multi_run(const ScorerFactory& trainer, const DataSplit& split,
                              Partition partition, std::size_t runs,
                              std::span<const std::uint64_t> seeds = {});

std::string report_to_json(const EvalReport& report,
                           const std::map<std::string, std::string>& environment = {});

// Fixed-width table: one column per emotion plus Overall, one row of rs
// (mean rs for multi-run reports, with a second row of standard deviations).
std::string render_table(const EvalReport& report);

}  // namespace emovec
