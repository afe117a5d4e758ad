// Python bindings for the main operations: loading vector spaces and
// lexicons, splitting, scoring (unsupervised / trained / self-supervised /
// lexicon lookup), Pearson evaluation, and tokenization.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

#include "emovec/cli.hpp"
#include "emovec/embeddings.hpp"
#include "emovec/error.hpp"
#include "emovec/eval.hpp"
#include "emovec/lexicon.hpp"
#include "emovec/regressors.hpp"
#include "emovec/scorer.hpp"
#include "emovec/selfsup.hpp"
#include "emovec/sentclass.hpp"

namespace py = pybind11;
using namespace emovec;

namespace {

EmotionInventory inventory_from_names(const std::vector<std::string>& names) {
    std::vector<EmotionLabel> labels;
    labels.reserve(names.size());
    for (const std::string& name : names) labels.push_back({name, name});
    return EmotionInventory(std::move(labels));
}

py::dict report_to_dict(const EvalReport& report) {
    py::dict per_emotion;
    for (const std::string& emotion : report.emotion_order) {
        const EmotionEval& eval = report.per_emotion.at(emotion);
        py::dict block;
        block["r"] = eval.r;
        block["pairs"] = eval.pairs;
        block["oov"] = eval.oov;
        block["degenerate"] = eval.degenerate;
        per_emotion[py::str(emotion)] = block;
    }
    py::dict out;
    out["per_emotion"] = per_emotion;
    out["overall_r"] = report.overall_r;
    out["overall_pairs"] = report.overall_pairs;
    out["mean_emotion_r"] = report.mean_emotion_r;
    out["runs"] = report.runs;
    out["run_overall_rs"] = report.run_overall_rs;
    return out;
}

Partition partition_from(const std::string& name) {
    if (name == "train") return Partition::train;
    if (name == "validation") return Partition::validation;
    if (name == "test") return Partition::test;
    throw ArgumentError("unknown partition: " + name);
}

}  // namespace

PYBIND11_MODULE(_emovec, m) {
    m.doc() = "word-level emotion intensity scores from pretrained word vectors";
    m.attr("__version__") = std::string(kToolVersion);

    py::register_exception<Error>(m, "EmovecError", PyExc_RuntimeError);

    py::class_<VectorSpace>(m, "VectorSpace")
        .def_property_readonly("size", &VectorSpace::size)
        .def_property_readonly("dimension", &VectorSpace::dimension)
        .def("vocabulary", &VectorSpace::vocabulary)
        .def("__len__", &VectorSpace::size)
        .def("__contains__",
             [](const VectorSpace& space, const std::string& word) {
                 return resolve_word(space, word).has_value();
             })
        .def("vector",
             [](const VectorSpace& space, const std::string& word)
                 -> std::optional<std::vector<double>> {
                 auto row = resolve_word(space, word);
                 if (!row) return std::nullopt;
                 auto span = space.row(*row);
                 return std::vector<double>(span.begin(), span.end());
             },
             py::arg("word"), "components for a word, or None when absent");

    m.def("load_vectors",
          [](const std::string& path, bool binary, bool lenient) {
              return load_vectors_file(path, binary, HeaderMode::auto_detect,
                                       lenient ? ParseMode::lenient : ParseMode::strict);
          },
          py::arg("path"), py::arg("binary") = false, py::arg("lenient") = false);

    m.def("cosine_similarity",
          [](const VectorSpace& space, const std::string& a, const std::string& b) {
              auto ra = resolve_word(space, a);
              auto rb = resolve_word(space, b);
              if (!ra || !rb) {
                  throw ArgumentError("word not in the vector space");
              }
              return cosine(space.row(*ra), space.norm(*ra), space.row(*rb), space.norm(*rb));
          },
          py::arg("space"), py::arg("a"), py::arg("b"));

    m.def("rank_by_similarity",
          [](const VectorSpace& space, const std::string& anchor, std::size_t k, bool lowest) {
              auto ranked = rank_by_similarity(space, anchor, k,
                                               lowest ? RankDirection::lowest
                                                      : RankDirection::highest);
              std::vector<std::pair<std::string, double>> out;
              out.reserve(ranked.size());
              for (const RankedWord& rw : ranked) out.emplace_back(rw.word, rw.similarity);
              return out;
          },
          py::arg("space"), py::arg("anchor"), py::arg("k"), py::arg("lowest") = false);

    py::class_<IntensityLexicon>(m, "IntensityLexicon")
        .def_property_readonly("size", &IntensityLexicon::size)
        .def("__len__", &IntensityLexicon::size)
        .def("emotions", &IntensityLexicon::emotions)
        .def("find",
             [](const IntensityLexicon& lexicon, const std::string& word,
                const std::string& emotion) -> std::optional<double> {
                 return lexicon.find(word, emotion);
             },
             py::arg("word"), py::arg("emotion"));

    m.def("load_lexicon",
          [](const std::string& path, bool binary) { return load_lexicon_file(path, binary); },
          py::arg("path"), py::arg("binary") = false);

    py::class_<DataSplit>(m, "DataSplit")
        .def_property_readonly("emotions",
                               [](const DataSplit& s) { return s.emotion_order; })
        .def_property_readonly("seed", [](const DataSplit& s) { return s.seed; })
        .def("partition",
             [](const DataSplit& s, const std::string& emotion, const std::string& part) {
                 std::vector<std::pair<std::string, double>> out;
                 for (const ScoredWord& sw : s.partition(emotion, partition_from(part))) {
                     out.emplace_back(sw.word, sw.score);
                 }
                 return out;
             },
             py::arg("emotion"), py::arg("partition"))
        .def("counts", [](const DataSplit& s) {
            py::dict out;
            out["train"] = s.partition_count(Partition::train);
            out["validation"] = s.partition_count(Partition::validation);
            out["test"] = s.partition_count(Partition::test);
            return out;
        });

    m.def("make_split",
          [](const IntensityLexicon& lexicon, std::vector<std::string> emotions,
             std::uint64_t seed, std::vector<double> ratios) {
              if (ratios.size() != 3) {
                  throw ArgumentError("ratios must hold three values");
              }
              if (emotions.empty()) {
                  emotions = lexicon.emotions();
                  std::sort(emotions.begin(), emotions.end());
              }
              return split(lexicon, emotions, seed, SplitRatios{ratios[0], ratios[1], ratios[2]});
          },
          py::arg("lexicon"), py::arg("emotions") = std::vector<std::string>{},
          py::arg("seed") = 0,
          py::arg("ratios") = std::vector<double>{0.64, 0.16, 0.20});

    m.def("read_split", [](const std::string& dir) { return read_split(dir); }, py::arg("path"));

    py::class_<Scorer, std::shared_ptr<Scorer>>(m, "Scorer")
        .def("score",
             [](const Scorer& scorer, const std::string& word, const std::string& emotion) {
                 return scorer.score(word, emotion);
             },
             py::arg("word"), py::arg("emotion"))
        .def("covers",
             [](const Scorer& scorer, const std::string& emotion) {
                 return scorer.covers(emotion);
             },
             py::arg("emotion"));

    m.def("unsupervised_scorer",
          [](const VectorSpace& space, const std::vector<std::string>& emotions,
             double oov_policy) -> std::shared_ptr<Scorer> {
              return std::make_shared<UnsupervisedScorer>(space, inventory_from_names(emotions),
                                                          oov_policy);
          },
          py::arg("space"), py::arg("emotions"), py::arg("oov_policy") = 0.0,
          py::keep_alive<0, 1>());

    m.def("lexicon_scorer",
          [](const IntensityLexicon& lexicon, double oov_policy) -> std::shared_ptr<Scorer> {
              return std::make_shared<LexiconScorer>(lexicon, oov_policy);
          },
          py::arg("lexicon"), py::arg("oov_policy") = 0.0, py::keep_alive<0, 1>());

    m.def("train_scorer",
          [](const DataSplit& split, const VectorSpace& space, const std::string& kind,
             std::uint64_t seed, int epochs, int hidden_size) -> std::shared_ptr<Scorer> {
              TrainConfig config;
              config.seed = seed;
              config.epochs = epochs;
              config.hidden_size = hidden_size;
              TrainedModels trained = train_per_emotion(
                  split, space, kind == "svr" ? ModelKind::svr : ModelKind::ffnn, config);
              return std::make_shared<ModelScorer>(space, std::move(trained.models));
          },
          py::arg("split"), py::arg("space"), py::arg("kind") = "ffnn", py::arg("seed") = 0,
          py::arg("epochs") = 200, py::arg("hidden_size") = 64, py::keep_alive<0, 2>());

    m.def("self_supervised_scorer",
          [](const VectorSpace& space, const std::vector<std::string>& emotions, std::size_t k,
             const std::string& kind, std::uint64_t seed, int epochs,
             int hidden_size) -> std::shared_ptr<Scorer> {
              TrainConfig config;
              config.seed = seed;
              config.epochs = epochs;
              config.hidden_size = hidden_size;
              SelfSupervisedResult result = train_self_supervised(
                  space, inventory_from_names(emotions), k,
                  kind == "svr" ? ModelKind::svr : ModelKind::ffnn, config);
              return std::make_shared<ModelScorer>(space, std::move(result.trained.models));
          },
          py::arg("space"), py::arg("emotions"), py::arg("k") = 100, py::arg("kind") = "ffnn",
          py::arg("seed") = 0, py::arg("epochs") = 200, py::arg("hidden_size") = 64,
          py::keep_alive<0, 1>());

    m.def("pearson",
          [](const std::vector<double>& xs, const std::vector<double>& ys) {
              return pearson(xs, ys).r;
          },
          py::arg("xs"), py::arg("ys"));

    m.def("evaluate",
          [](const Scorer& scorer, const DataSplit& split, const std::string& partition) {
              return report_to_dict(evaluate_scorer(scorer, split, partition_from(partition)));
          },
          py::arg("scorer"), py::arg("split"), py::arg("partition") = "test");

    m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "run a CLI command in-process; returns (exit_code, stdout, stderr)");
}
