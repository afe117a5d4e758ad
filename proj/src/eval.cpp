#include "emovec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emovec/error.hpp"
#include "emovec/util.hpp"

namespace emovec {

namespace {

using json = nlohmann::json;

double mean_of(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

// Population standard deviation across runs (n divisor): the runs are the
// whole population of interest, not a sample from one.
double std_of(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    double mu = mean_of(values);
    double acc = 0.0;
    for (double v : values) acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

}  // namespace

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw ArgumentError("pearson: length mismatch (" + std::to_string(xs.size()) + " vs " +
                            std::to_string(ys.size()) + ")");
    }
    if (xs.size() < 2) {
        throw ArgumentError("pearson: need at least 2 points");
    }
    const double n = static_cast<double>(xs.size());
    double mx = mean_of(xs);
    double my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx;
        double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    (void)n;
    if (sxx == 0.0 || syy == 0.0) {
        return {0.0, true};
    }
    double r = sxy / std::sqrt(sxx * syy);
    return {std::clamp(r, -1.0, 1.0), false};
}

EvalReport evaluate_scorer(const Scorer& scorer, const DataSplit& split, Partition partition) {
    EvalReport report;
    std::vector<double> all_predictions, all_gold;
    std::vector<double> emotion_rs;

    for (const std::string& emotion : split.emotion_order) {
        if (!scorer.covers(emotion)) {
            report.partial_coverage = true;
            continue;
        }
        const std::vector<ScoredWord>& words = split.partition(emotion, partition);
        if (words.empty()) {
            throw ConfigError("empty " + std::string(partition_name(partition)) +
                              " partition for emotion '" + emotion + "'");
        }
        EmotionEval eval;
        std::vector<double> predictions, gold;
        predictions.reserve(words.size());
        gold.reserve(words.size());
        for (const ScoredWord& sw : words) {
            ScoreResult result = scorer.score_checked(sw.word, emotion);
            if (!result.resolved) ++eval.oov;
            predictions.push_back(result.value);
            gold.push_back(sw.score);
        }
        eval.pairs = words.size();
        PearsonResult pr = pearson(predictions, gold);
        eval.r = pr.r;
        eval.degenerate = pr.degenerate;

        all_predictions.insert(all_predictions.end(), predictions.begin(), predictions.end());
        all_gold.insert(all_gold.end(), gold.begin(), gold.end());
        emotion_rs.push_back(eval.r);
        report.emotion_order.push_back(emotion);
        report.per_emotion.emplace(emotion, eval);
    }

    if (report.emotion_order.empty()) {
        throw ConfigError("scorer covers none of the split's emotions");
    }

    PearsonResult overall = pearson(all_predictions, all_gold);
    report.overall_r = overall.r;
    report.overall_degenerate = overall.degenerate;
    report.overall_pairs = all_predictions.size();
    report.mean_emotion_r = mean_of(emotion_rs);
    report.run_overall_rs.push_back(report.overall_r);
    for (const std::string& emotion : report.emotion_order) {
        report.run_emotion_rs[emotion].push_back(report.per_emotion.at(emotion).r);
    }
    return report;
}

EvalReport evaluate_multi_run(const ScorerFactory& trainer, const DataSplit& split,
                              Partition partition, std::size_t runs,
                              std::span<const std::uint64_t> seeds) {
    if (runs == 0) {
        throw ArgumentError("evaluate_multi_run: runs must be positive");
    }
    std::vector<std::uint64_t> default_seeds;
    if (seeds.empty()) {
        default_seeds.resize(runs);
        std::iota(default_seeds.begin(), default_seeds.end(), 0);
        seeds = default_seeds;
    }
    if (seeds.size() != runs) {
        throw ArgumentError("evaluate_multi_run: need one seed per run");
    }

    EvalReport aggregate;
    std::vector<EvalReport> reports;
    reports.reserve(runs);
    for (std::size_t i = 0; i < runs; ++i) {
        std::unique_ptr<Scorer> scorer = trainer(seeds[i]);
        reports.push_back(evaluate_scorer(*scorer, split, partition));
        if (i > 0 && reports[i].emotion_order != reports[0].emotion_order) {
            throw ConfigError("runs disagree on covered emotions");
        }
    }

    const EvalReport& first = reports.front();
    aggregate.emotion_order = first.emotion_order;
    aggregate.partial_coverage = first.partial_coverage;
    aggregate.overall_pairs = first.overall_pairs;
    aggregate.runs = runs;

    for (const EvalReport& run : reports) {
        aggregate.run_overall_rs.push_back(run.overall_r);
        for (const std::string& emotion : aggregate.emotion_order) {
            aggregate.run_emotion_rs[emotion].push_back(run.per_emotion.at(emotion).r);
        }
    }
    aggregate.overall_r = mean_of(aggregate.run_overall_rs);
    aggregate.overall_std = std_of(aggregate.run_overall_rs);

    std::vector<double> emotion_means;
    for (const std::string& emotion : aggregate.emotion_order) {
        const std::vector<double>& rs = aggregate.run_emotion_rs.at(emotion);
        EmotionEval eval = first.per_emotion.at(emotion);
        eval.r = mean_of(rs);
        eval.degenerate = false;
        for (const EvalReport& run : reports) {
            eval.degenerate = eval.degenerate || run.per_emotion.at(emotion).degenerate;
        }
        aggregate.per_emotion.emplace(emotion, eval);
        aggregate.per_emotion_std.emplace(emotion, std_of(rs));
        emotion_means.push_back(eval.r);
    }
    aggregate.mean_emotion_r = mean_of(emotion_means);
    aggregate.overall_degenerate = false;
    return aggregate;
}

std::string report_to_json(const EvalReport& report,
                           const std::map<std::string, std::string>& environment) {
    json per_emotion = json::object();
    for (const std::string& emotion : report.emotion_order) {
        const EmotionEval& eval = report.per_emotion.at(emotion);
        json block = {
            {"r", eval.r},
            {"pairs", eval.pairs},
            {"oov", eval.oov},
            {"degenerate", eval.degenerate},
        };
        if (report.runs > 1) {
            block["std"] = report.per_emotion_std.at(emotion);
            block["run_rs"] = report.run_emotion_rs.at(emotion);
        }
        per_emotion[emotion] = block;
    }
    json doc = {
        {"per_emotion", per_emotion},
        {"emotion_order", report.emotion_order},
        {"overall",
         {{"r", report.overall_r},
          {"pairs", report.overall_pairs},
          {"degenerate", report.overall_degenerate}}},
        {"mean_emotion_r", report.mean_emotion_r},
        {"partial_coverage", report.partial_coverage},
        {"runs", report.runs},
    };
    if (report.runs > 1) {
        doc["overall"]["std"] = report.overall_std;
        doc["overall"]["run_rs"] = report.run_overall_rs;
    }
    if (!environment.empty()) {
        doc["environment"] = environment;
    }
    return doc.dump(2) + "\n";
}

std::string render_table(const EvalReport& report) {
    std::vector<std::string> headers = report.emotion_order;
    headers.push_back("Overall");
    std::vector<std::string> values, stds;
    auto fmt = [](double v) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(3) << v;
        return os.str();
    };
    for (const std::string& emotion : report.emotion_order) {
        values.push_back(fmt(report.per_emotion.at(emotion).r));
        if (report.runs > 1) stds.push_back(fmt(report.per_emotion_std.at(emotion)));
    }
    values.push_back(fmt(report.overall_r));
    if (report.runs > 1) stds.push_back(fmt(report.overall_std));

    std::vector<std::size_t> widths(headers.size());
    for (std::size_t i = 0; i < headers.size(); ++i) {
        widths[i] = std::max(headers[i].size(), values[i].size());
        if (report.runs > 1) widths[i] = std::max(widths[i], stds[i].size());
    }

    std::ostringstream out;
    auto row = [&](std::string_view label, const std::vector<std::string>& cells) {
        out << std::left << std::setw(8) << label;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << "  " << std::right << std::setw(static_cast<int>(widths[i])) << cells[i];
        }
        out << '\n';
    };
    row("", headers);
    row("r", values);
    if (report.runs > 1) row("std", stds);
    if (report.partial_coverage) {
        out << "(covered labels only)\n";
    }
    return out.str();
}

}  // namespace emovec
