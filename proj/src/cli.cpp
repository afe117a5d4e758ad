#include "emovec/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "emovec/embeddings.hpp"
#include "emovec/error.hpp"
#include "emovec/eval.hpp"
#include "emovec/lexicon.hpp"
#include "emovec/regressors.hpp"
#include "emovec/rng.hpp"
#include "emovec/scorer.hpp"
#include "emovec/selfsup.hpp"
#include "emovec/sentclass.hpp"
#include "emovec/util.hpp"

namespace emovec {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// JSON config files: a flat object of long-option values (keys without the
// leading dashes), lower precedence than command-line flags. Arrays feed
// multi-value options. Applied after parsing, so required options must
// still appear on the command line.
void apply_config_file(CLI::App* cmd) {
    if (!cmd->parsed()) return;
    CLI::Option* config_opt = cmd->get_option_no_throw("--config");
    if (config_opt == nullptr || config_opt->count() == 0) return;

    const std::string path = config_opt->as<std::string>();
    std::ifstream in(path);
    if (!in) {
        throw CLI::ParseError("cannot open config file: " + path, CLI::ExitCodes::FileError);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw CLI::ParseError(std::string("config file is not valid JSON: ") + e.what(),
                              CLI::ExitCodes::ConversionError);
    }
    if (!doc.is_object()) {
        throw CLI::ParseError("config file must hold a JSON object",
                              CLI::ExitCodes::ConversionError);
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "config") continue;
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw CLI::ParseError("config file sets unknown option '--" + key + "'",
                                  CLI::ExitCodes::ExtrasError);
        }
        if (opt->count() > 0) continue;  // explicit flags win
        if (value.is_array()) {
            for (const json& element : value) {
                opt->add_result(element.is_string() ? element.get<std::string>()
                                                    : element.dump());
            }
        } else {
            opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
        }
        opt->run_callback();
    }
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

std::string fixed4(double value) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << value;
    return os.str();
}

void write_manifest(const fs::path& path, std::span<const std::string> args,
                    const json& config, const std::map<std::string, std::string>& inputs,
                    const json& seeds, const std::vector<std::string>& outputs) {
    json doc = {
        {"tool", std::string("emovec ") + std::string(kToolVersion)},
        {"command", std::vector<std::string>(args.begin(), args.end())},
        {"timestamp", utc_timestamp()},
        {"config", config},
        {"inputs", inputs},
        {"seeds", seeds},
        {"outputs", outputs},
    };
    atomic_write_file(path, doc.dump(2) + "\n");
}

// One token per line, `#` comments; a tab may separate a trailing comment
// field which is ignored.
std::vector<std::string> read_word_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open word list: " + path.string());
    }
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.push_back(std::string(split_on(line, '\t')[0]));
    }
    return words;
}

bool infer_binary(const std::string& format, const fs::path& vectors) {
    if (format == "binary") return true;
    if (format == "text") return false;
    return vectors.extension() == ".bin";
}

HeaderMode header_mode_from(const std::string& name) {
    if (name == "yes") return HeaderMode::yes;
    if (name == "no") return HeaderMode::no;
    return HeaderMode::auto_detect;
}

void save_model_files(const TrainedModels& trained, const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& [emotion, model] : trained.models) {
        atomic_write_file(dir / (emotion + ".model.json"), model_to_json(model));
    }
}

std::map<std::string, RegressionModel> load_model_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("model directory does not exist: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().filename().string().ends_with(".model.json")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw IoError("no *.model.json files in " + dir.string());
    }
    std::map<std::string, RegressionModel> models;
    for (const fs::path& file : files) {
        std::string stem = file.filename().string();
        stem.resize(stem.size() - std::string(".model.json").size());
        models.emplace(stem, model_from_json(read_file(file)));
    }
    return models;
}

// ---------------------------------------------------------------------------
// inspect

struct InspectParams {
    std::string vectors;
    std::string format = "auto";
    std::string header = "auto";
    bool lenient = false;
};

int cmd_inspect(const InspectParams& p, std::ostream& out) {
    VectorSpace space = load_vectors_file(
        p.vectors, infer_binary(p.format, p.vectors), header_mode_from(p.header),
        p.lenient ? ParseMode::lenient : ParseMode::strict);
    out << "n=" << space.size() << " d=" << space.dimension() << "\n";
    out << "duplicates=" << space.duplicate_count() << " zero_norm=" << space.zero_norm_count()
        << " skipped_lines=" << space.skipped_line_count() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// split

struct SplitParams {
    std::string lexicon;
    bool binary_scores = false;
    std::string labels;
    std::uint64_t seed = 0;
    std::vector<double> ratios{0.64, 0.16, 0.20};
    std::string out_dir;
};

int cmd_split(const SplitParams& p, std::span<const std::string> args, std::ostream& out) {
    if (p.ratios.size() != 3) {
        throw ArgumentError("--ratios takes exactly three values");
    }
    IntensityLexicon lexicon = load_lexicon_file(p.lexicon, p.binary_scores);

    std::vector<std::string> emotions;
    if (!p.labels.empty()) {
        emotions = load_inventory_file(p.labels).names();
    } else {
        emotions = lexicon.emotions();
        std::sort(emotions.begin(), emotions.end());
    }

    DataSplit result = split(lexicon, emotions, p.seed,
                             SplitRatios{p.ratios[0], p.ratios[1], p.ratios[2]});
    result.source_sha256 = sha256_file(p.lexicon);
    fs::create_directories(p.out_dir);
    write_split(result, p.out_dir);

    json config = {
        {"lexicon", p.lexicon},         {"binary_scores", p.binary_scores},
        {"labels", p.labels},           {"seed", p.seed},
        {"ratios", p.ratios},           {"out", p.out_dir},
    };
    std::vector<std::string> outputs{"split_manifest.json"};
    for (const std::string& emotion : result.emotion_order) {
        for (Partition part : {Partition::train, Partition::validation, Partition::test}) {
            outputs.push_back(emotion + "." + std::string(partition_name(part)) + ".tsv");
        }
    }
    write_manifest(fs::path(p.out_dir) / "manifest.json", args, config,
                   {{p.lexicon, result.source_sha256}}, {{"master", p.seed}}, outputs);

    out << "total=" << result.total_count() << " train=" << result.partition_count(Partition::train)
        << " validation=" << result.partition_count(Partition::validation)
        << " test=" << result.partition_count(Partition::test) << "\n";
    if (lexicon.bigram_dropped_count() > 0) {
        out << "dropped_multiword_terms=" << lexicon.bigram_dropped_count() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalParams {
    std::string method;
    std::string vectors;
    std::string format = "auto";
    std::string header = "auto";
    bool lenient = false;
    std::string split_dir;
    std::string labels;
    std::string baseline;
    std::string candidates;
    std::string partition = "test";
    std::size_t k = 100;
    int runs = -1;  // -1: 20 for training methods, 1 otherwise
    std::uint64_t seed = 0;
    std::string target_rule = "scores";
    double oov_policy = 0.0;
    std::string save_models;
    std::string out_path;
    // training hyperparameters
    int epochs = 200;
    int batch_size = 32;
    double learning_rate = 1e-3;
    int hidden_size = 64;
    double dropout = 0.2;
    double svr_c = 1.0;
    double svr_epsilon = 0.1;
    double svr_gamma = 0.0;
    double svr_tolerance = 1e-3;
    int svr_max_passes = 1000;
};

bool is_training_method(const std::string& method) {
    return method == "train-ffnn" || method == "train-svr" || method == "selfsup-ffnn" ||
           method == "selfsup-svr";
}

int cmd_eval(const EvalParams& p, std::span<const std::string> args, std::ostream& out) {
    const bool training = is_training_method(p.method);
    const bool needs_vectors = p.method != "lexicon";
    if (needs_vectors && p.vectors.empty()) {
        throw ArgumentError("--vectors is required for method " + p.method);
    }
    if (p.method == "lexicon" && p.baseline.empty()) {
        throw ArgumentError("--baseline is required for method lexicon");
    }
    const std::size_t runs = training ? (p.runs < 0 ? 20 : static_cast<std::size_t>(p.runs)) : 1;
    if (training && runs == 0) {
        throw ArgumentError("--runs must be positive");
    }
    const Partition partition = p.partition == "validation" ? Partition::validation
                                                            : Partition::test;

    DataSplit data_split = read_split(p.split_dir);
    EmotionInventory inventory;
    if (!p.labels.empty()) {
        inventory = load_inventory_file(p.labels);
    } else {
        std::vector<EmotionLabel> labels;
        for (const std::string& emotion : data_split.emotion_order) {
            labels.push_back({emotion, ascii_lower(emotion)});
        }
        inventory = EmotionInventory(std::move(labels));
    }

    std::optional<VectorSpace> space;
    if (needs_vectors) {
        space.emplace(load_vectors_file(p.vectors, infer_binary(p.format, p.vectors),
                                        header_mode_from(p.header),
                                        p.lenient ? ParseMode::lenient : ParseMode::strict));
    }
    std::optional<IntensityLexicon> baseline;
    if (p.method == "lexicon") {
        baseline.emplace(load_lexicon_file(p.baseline));
    }
    std::vector<std::string> candidate_vocab;
    if (!p.candidates.empty()) {
        candidate_vocab = read_word_list(p.candidates);
    }

    TrainConfig base_config;
    base_config.epochs = p.epochs;
    base_config.batch_size = p.batch_size;
    base_config.learning_rate = p.learning_rate;
    base_config.hidden_size = p.hidden_size;
    base_config.dropout_rate = p.dropout;
    base_config.svr = SvrConfig{p.svr_c, p.svr_epsilon, p.svr_gamma, p.svr_tolerance,
                                p.svr_max_passes};
    const ModelKind kind = p.method.ends_with("svr") ? ModelKind::svr : ModelKind::ffnn;
    const TargetRule rule = p.target_rule == "binary" ? TargetRule::binary
                                                      : TargetRule::unsupervised_scores;

    std::vector<std::uint64_t> run_seeds(runs);
    for (std::size_t i = 0; i < runs; ++i) run_seeds[i] = derive_seed(p.seed, "run", i);

    EvalReport report;
    std::map<std::string, EmotionTrainStats> first_run_stats;

    if (p.method == "unsup") {
        UnsupervisedScorer scorer(*space, inventory, p.oov_policy);
        report = evaluate_scorer(scorer, data_split, partition);
    } else if (p.method == "lexicon") {
        LexiconScorer scorer(*baseline, p.oov_policy);
        report = evaluate_scorer(scorer, data_split, partition);
    } else {
        std::size_t run_index = 0;
        ScorerFactory factory = [&](std::uint64_t run_seed) -> std::unique_ptr<Scorer> {
            TrainConfig config = base_config;
            config.seed = run_seed;
            TrainedModels trained;
            std::vector<ExtremeSets> extremes;
            if (p.method == "train-ffnn" || p.method == "train-svr") {
                trained = train_per_emotion(data_split, *space, kind, config);
            } else {
                SelfSupervisedResult selfsup =
                    train_self_supervised(*space, inventory, p.k, kind, config,
                                          candidate_vocab, rule);
                trained = std::move(selfsup.trained);
                extremes = std::move(selfsup.extremes);
            }
            if (run_index == 0) {
                first_run_stats = trained.stats;
                if (!p.save_models.empty()) {
                    save_model_files(trained, p.save_models);
                    for (const ExtremeSets& sets : extremes) {
                        std::ostringstream buffer;
                        write_extremes_tsv(sets, buffer);
                        atomic_write_file(fs::path(p.save_models) /
                                              (sets.emotion + ".extremes.tsv"),
                                          buffer.str());
                    }
                }
            }
            ++run_index;
            return std::make_unique<ModelScorer>(*space, std::move(trained.models),
                                                 p.oov_policy);
        };
        report = evaluate_multi_run(factory, data_split, partition, runs, run_seeds);
    }

    for (const auto& [emotion, stats] : first_run_stats) {
        out << "trained " << emotion << ": n=" << stats.train_size
            << " oov_skipped=" << stats.oov_skipped
            << " final_mse=" << format_double(stats.final_training_mse);
        if (stats.validation_r) out << " validation_r=" << fixed4(*stats.validation_r);
        if (!stats.svr_converged) out << " svr_converged=false";
        out << "\n";
    }
    out << render_table(report);
    out << "overall_pairs=" << report.overall_pairs << " runs=" << report.runs << "\n";

    if (!p.out_path.empty() || !p.save_models.empty()) {
        std::map<std::string, std::string> inputs;
        if (needs_vectors) inputs[p.vectors] = sha256_file(p.vectors);
        if (!p.baseline.empty()) inputs[p.baseline] = sha256_file(p.baseline);
        fs::path split_manifest = fs::path(p.split_dir) / "split_manifest.json";
        if (fs::exists(split_manifest)) {
            inputs[split_manifest.string()] = sha256_file(split_manifest);
        }
        json config = {
            {"method", p.method},       {"vectors", p.vectors},
            {"split", p.split_dir},     {"labels", p.labels},
            {"baseline", p.baseline},   {"partition", p.partition},
            {"k", p.k},                 {"runs", runs},
            {"seed", p.seed},           {"target_rule", p.target_rule},
            {"oov_policy", p.oov_policy},
            {"epochs", p.epochs},       {"batch_size", p.batch_size},
            {"learning_rate", p.learning_rate},
            {"hidden_size", p.hidden_size},
            {"dropout", p.dropout},
            {"svr",
             {{"C", p.svr_c},
              {"epsilon", p.svr_epsilon},
              {"gamma", p.svr_gamma},
              {"tolerance", p.svr_tolerance},
              {"max_passes", p.svr_max_passes}}},
        };
        json seeds = {{"master", p.seed}};
        if (training) seeds["runs"] = run_seeds;

        std::vector<std::string> outputs;
        if (!p.out_path.empty()) {
            std::map<std::string, std::string> environment;
            if (needs_vectors) environment["vectors_sha256"] = inputs.at(p.vectors);
            environment["split"] = p.split_dir;
            environment["method"] = p.method;
            atomic_write_file(p.out_path, report_to_json(report, environment));
            outputs.push_back(p.out_path);
        }
        if (!p.save_models.empty()) outputs.push_back(p.save_models);
        fs::path manifest_path = !p.out_path.empty()
                                     ? fs::path(p.out_path + ".manifest.json")
                                     : fs::path(p.save_models) / "manifest.json";
        write_manifest(manifest_path, args, config, inputs, seeds, outputs);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyParams {
    std::string vectors;
    std::string format = "auto";
    std::string header = "auto";
    bool lenient = false;
    std::string labels;
    std::string corpus;
    std::string neutral_label = "neutral";
    double threshold = 0.03;
    bool unnormalized = false;
    bool random_baseline = false;
    std::uint64_t seed = 0;
    double oov_policy = 0.0;
    std::string out_prefix;
};

int cmd_classify(const ClassifyParams& p, std::span<const std::string> args, std::ostream& out) {
    if (!p.random_baseline && p.vectors.empty()) {
        throw ArgumentError("--vectors is required unless --random-baseline is set");
    }
    // Raw file order maps integer gold labels to names and fixes the metric
    // label universe; the inventory separates out the neutral label.
    std::vector<std::string> universe = read_word_list(p.labels);
    if (universe.empty()) {
        throw ParseError("labels file declares no labels: " + p.labels);
    }
    EmotionInventory inventory = load_inventory_file(p.labels, p.neutral_label);
    Corpus corpus = load_corpus_file(p.corpus, universe);

    std::map<std::string, std::string> predicted_labels;
    std::map<std::string, Classification> classifications;
    if (p.random_baseline) {
        predicted_labels = random_predictions(corpus, universe,
                                              derive_seed(p.seed, "random-baseline"));
        for (const auto& [id, label] : predicted_labels) {
            classifications.emplace(id, Classification{label, 0.0, 0.0});
        }
    } else {
        if (!inventory.has_neutral()) {
            throw ConfigError("labels file must include the neutral label '" + p.neutral_label +
                              "'");
        }
        VectorSpace space = load_vectors_file(
            p.vectors, infer_binary(p.format, p.vectors), header_mode_from(p.header),
            p.lenient ? ParseMode::lenient : ParseMode::strict);
        UnsupervisedScorer scorer(space, inventory, p.oov_policy);
        ClassifierConfig config{p.threshold, !p.unnormalized};
        classifications = classify_corpus(scorer, corpus, config);
        for (const auto& [id, c] : classifications) predicted_labels.emplace(id, c.label);
    }

    std::map<std::string, std::vector<std::string>> gold;
    for (const Document& doc : corpus.documents()) gold.emplace(doc.id, doc.gold_labels);
    MacroMetrics metrics = evaluate_classification(predicted_labels, gold, universe);

    out << "documents " << metrics.doc_count << "\n";
    out << "macro_precision " << fixed4(metrics.macro_precision) << "\n";
    out << "macro_recall " << fixed4(metrics.macro_recall) << "\n";
    out << "macro_f1 " << fixed4(metrics.macro_f1) << "\n";

    if (!p.out_prefix.empty()) {
        std::ostringstream predictions;
        write_predictions_tsv(corpus, classifications, predictions);
        atomic_write_file(p.out_prefix + ".predictions.tsv", predictions.str());
        atomic_write_file(p.out_prefix + ".metrics.json", metrics_to_json(metrics));

        std::map<std::string, std::string> inputs{{p.corpus, sha256_file(p.corpus)},
                                                  {p.labels, sha256_file(p.labels)}};
        if (!p.vectors.empty()) inputs[p.vectors] = sha256_file(p.vectors);
        json config = {
            {"vectors", p.vectors},       {"labels", p.labels},
            {"corpus", p.corpus},         {"threshold", p.threshold},
            {"normalized", !p.unnormalized},
            {"random_baseline", p.random_baseline},
            {"neutral_label", p.neutral_label},
            {"seed", p.seed},             {"oov_policy", p.oov_policy},
        };
        write_manifest(p.out_prefix + ".manifest.json", args, config, inputs,
                       {{"master", p.seed}},
                       {p.out_prefix + ".predictions.tsv", p.out_prefix + ".metrics.json"});
    }
    return 0;
}

// ---------------------------------------------------------------------------
// export

struct ExportParams {
    std::string method = "unsup";
    std::string vectors;
    std::string format = "auto";
    std::string header = "auto";
    bool lenient = false;
    std::string labels;
    std::string models_dir;
    std::string vocabulary;
    double oov_policy = 0.0;
    std::string out_prefix;
};

int cmd_export(const ExportParams& p, std::span<const std::string> args, std::ostream& out) {
    std::vector<std::string> vocabulary = read_word_list(p.vocabulary);
    VectorSpace space = load_vectors_file(
        p.vectors, infer_binary(p.format, p.vectors), header_mode_from(p.header),
        p.lenient ? ParseMode::lenient : ParseMode::strict);

    std::unique_ptr<Scorer> scorer;
    EmotionInventory inventory;
    if (p.method == "unsup") {
        if (p.labels.empty()) {
            throw ArgumentError("--labels is required for method unsup");
        }
        inventory = load_inventory_file(p.labels);
        scorer = std::make_unique<UnsupervisedScorer>(space, inventory, p.oov_policy);
    } else {
        if (p.models_dir.empty()) {
            throw ArgumentError("--models is required for method models");
        }
        std::map<std::string, RegressionModel> models = load_model_files(p.models_dir);
        std::vector<EmotionLabel> labels;
        for (const auto& [emotion, model] : models) labels.push_back({emotion, emotion});
        inventory = EmotionInventory(std::move(labels));
        scorer = std::make_unique<ModelScorer>(space, std::move(models), p.oov_policy);
    }

    GeneratedLexicon generated = generate_lexicon(*scorer, inventory, vocabulary);

    std::ostringstream clamped, raw;
    write_lexicon_tsv(generated.lexicon.entries(), clamped);
    write_lexicon_tsv(generated.raw, raw);
    atomic_write_file(p.out_prefix + ".tsv", clamped.str());
    atomic_write_file(p.out_prefix + ".raw.tsv", raw.str());

    std::map<std::string, std::string> inputs{{p.vectors, sha256_file(p.vectors)},
                                              {p.vocabulary, sha256_file(p.vocabulary)}};
    if (!p.labels.empty()) inputs[p.labels] = sha256_file(p.labels);
    json config = {
        {"method", p.method},       {"vectors", p.vectors},  {"labels", p.labels},
        {"models", p.models_dir},   {"vocabulary", p.vocabulary},
        {"oov_policy", p.oov_policy}, {"out", p.out_prefix},
    };
    write_manifest(p.out_prefix + ".manifest.json", args, config, inputs, json::object(),
                   {p.out_prefix + ".tsv", p.out_prefix + ".raw.tsv"});

    out << "entries=" << generated.lexicon.size() << " clamped=" << generated.clamped_count
        << "\n";
    return 0;
}

void add_vector_flags(CLI::App* cmd, std::string& vectors, std::string& format,
                      std::string& header, bool& lenient, bool required) {
    auto* opt = cmd->add_option("--vectors", vectors, "word vector file");
    if (required) opt->required();
    cmd->add_option("--vector-format", format, "vector file format")
        ->check(CLI::IsMember({"text", "binary", "auto"}))
        ->capture_default_str();
    cmd->add_option("--vector-header", header, "text format header handling")
        ->check(CLI::IsMember({"yes", "no", "auto"}))
        ->capture_default_str();
    cmd->add_flag("--lenient", lenient, "skip malformed vector lines instead of failing");
}

void add_config_option(CLI::App* cmd) {
    cmd->add_option("--config", "JSON file supplying defaults for these options");
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"word-level emotion intensity from pretrained word vectors"};
    app.name("emovec");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    InspectParams inspect;
    auto* inspect_cmd = app.add_subcommand("inspect", "summarize a vector file");
    inspect_cmd->add_option("vectors", inspect.vectors, "word vector file")->required();
    inspect_cmd->add_option("--vector-format", inspect.format, "vector file format")
        ->check(CLI::IsMember({"text", "binary", "auto"}))
        ->capture_default_str();
    inspect_cmd->add_option("--vector-header", inspect.header, "text format header handling")
        ->check(CLI::IsMember({"yes", "no", "auto"}))
        ->capture_default_str();
    inspect_cmd->add_flag("--lenient", inspect.lenient,
                          "skip malformed vector lines instead of failing");
    add_config_option(inspect_cmd);

    SplitParams split_params;
    auto* split_cmd =
        app.add_subcommand("split", "partition an intensity lexicon into train/validation/test");
    split_cmd->add_option("--lexicon", split_params.lexicon, "intensity lexicon TSV")->required();
    split_cmd->add_flag("--binary-lexicon", split_params.binary_scores,
                        "scores are 0/1 association flags");
    split_cmd->add_option("--labels", split_params.labels,
                          "labels file fixing the emotions and their order");
    split_cmd->add_option("--seed", split_params.seed, "shuffle seed")->capture_default_str();
    split_cmd->add_option("--ratios", split_params.ratios, "train/validation/test fractions")
        ->expected(3);
    split_cmd->add_option("--out", split_params.out_dir, "output directory")->required();
    add_config_option(split_cmd);

    EvalParams eval_params;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a scoring method against a split");
    eval_cmd->add_option("--method", eval_params.method, "scoring method")
        ->check(CLI::IsMember(
            {"unsup", "train-ffnn", "train-svr", "selfsup-ffnn", "selfsup-svr", "lexicon"}))
        ->required();
    add_vector_flags(eval_cmd, eval_params.vectors, eval_params.format, eval_params.header,
                     eval_params.lenient, false);
    eval_cmd->add_option("--split", eval_params.split_dir, "split directory")->required();
    eval_cmd->add_option("--labels", eval_params.labels, "labels file with anchor words");
    eval_cmd->add_option("--baseline", eval_params.baseline,
                         "third-party lexicon for method lexicon");
    eval_cmd->add_option("--candidates", eval_params.candidates,
                         "candidate vocabulary for self-supervision");
    eval_cmd->add_option("--partition", eval_params.partition, "partition to evaluate")
        ->check(CLI::IsMember({"validation", "test"}))
        ->capture_default_str();
    eval_cmd->add_option("--k", eval_params.k, "extreme-set size per side")
        ->capture_default_str();
    eval_cmd->add_option("--runs", eval_params.runs,
                         "training runs to average (default 20 for training methods)");
    eval_cmd->add_option("--seed", eval_params.seed, "master seed")->capture_default_str();
    eval_cmd->add_option("--target-rule", eval_params.target_rule,
                         "self-supervision targets: unsupervised scores or binary")
        ->check(CLI::IsMember({"scores", "binary"}))
        ->capture_default_str();
    eval_cmd->add_option("--oov-policy", eval_params.oov_policy,
                         "score assigned to unresolvable words")
        ->capture_default_str();
    eval_cmd->add_option("--save-models", eval_params.save_models,
                         "directory for the first run's model files");
    eval_cmd->add_option("--out", eval_params.out_path, "evaluation report JSON path");
    eval_cmd->add_option("--epochs", eval_params.epochs)->capture_default_str();
    eval_cmd->add_option("--batch-size", eval_params.batch_size)->capture_default_str();
    eval_cmd->add_option("--learning-rate", eval_params.learning_rate)->capture_default_str();
    eval_cmd->add_option("--hidden-size", eval_params.hidden_size)->capture_default_str();
    eval_cmd->add_option("--dropout", eval_params.dropout)->capture_default_str();
    eval_cmd->add_option("--svr-c", eval_params.svr_c)->capture_default_str();
    eval_cmd->add_option("--svr-epsilon", eval_params.svr_epsilon)->capture_default_str();
    eval_cmd->add_option("--svr-gamma", eval_params.svr_gamma,
                         "RBF bandwidth; 0 selects the 1/dimension rule")
        ->capture_default_str();
    eval_cmd->add_option("--svr-tolerance", eval_params.svr_tolerance)->capture_default_str();
    eval_cmd->add_option("--svr-max-passes", eval_params.svr_max_passes)->capture_default_str();
    add_config_option(eval_cmd);

    ClassifyParams classify_params;
    auto* classify_cmd =
        app.add_subcommand("classify", "unsupervised sentence-level emotion classification");
    add_vector_flags(classify_cmd, classify_params.vectors, classify_params.format,
                     classify_params.header, classify_params.lenient, false);
    classify_cmd->add_option("--labels", classify_params.labels,
                             "labels file incl. the neutral label, order significant")
        ->required();
    classify_cmd->add_option("--corpus", classify_params.corpus,
                             "TSV corpus: text TAB labels TAB id")
        ->required();
    classify_cmd
        ->add_option("--neutral-label", classify_params.neutral_label, "name of the neutral label")
        ->capture_default_str();
    classify_cmd->add_option("--threshold", classify_params.threshold,
                             "neutral threshold on the mean label score")
        ->capture_default_str();
    classify_cmd->add_flag("--unnormalized", classify_params.unnormalized,
                           "use raw TF-IDF-weighted sums instead of weighted means");
    classify_cmd->add_flag("--random-baseline", classify_params.random_baseline,
                           "seeded uniform random predictions instead of scoring");
    classify_cmd->add_option("--seed", classify_params.seed, "baseline seed")
        ->capture_default_str();
    classify_cmd->add_option("--oov-policy", classify_params.oov_policy,
                             "score assigned to unresolvable words")
        ->capture_default_str();
    classify_cmd->add_option("--out", classify_params.out_prefix,
                             "prefix for predictions/metrics/manifest files");
    add_config_option(classify_cmd);

    ExportParams export_params;
    auto* export_cmd = app.add_subcommand("export", "materialize a scorer as a lexicon file");
    export_cmd->add_option("--method", export_params.method, "scorer to export")
        ->check(CLI::IsMember({"unsup", "models"}))
        ->capture_default_str();
    add_vector_flags(export_cmd, export_params.vectors, export_params.format,
                     export_params.header, export_params.lenient, true);
    export_cmd->add_option("--labels", export_params.labels, "labels file with anchor words");
    export_cmd->add_option("--models", export_params.models_dir,
                           "directory of *.model.json files");
    export_cmd->add_option("--vocabulary", export_params.vocabulary,
                           "word list to score, one per line")
        ->required();
    export_cmd->add_option("--oov-policy", export_params.oov_policy,
                           "score assigned to unresolvable words")
        ->capture_default_str();
    export_cmd->add_option("--out", export_params.out_prefix, "output file prefix")->required();
    add_config_option(export_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (CLI::App* cmd : {inspect_cmd, split_cmd, eval_cmd, classify_cmd, export_cmd}) {
            apply_config_file(cmd);
        }
    } catch (const CLI::CallForHelp&) {
        CLI::App* target = &app;
        while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
        out << target->help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (inspect_cmd->parsed()) return cmd_inspect(inspect, out);
        if (split_cmd->parsed()) return cmd_split(split_params, args, out);
        if (eval_cmd->parsed()) return cmd_eval(eval_params, args, out);
        if (classify_cmd->parsed()) return cmd_classify(classify_params, args, out);
        if (export_cmd->parsed()) return cmd_export(export_params, args, out);
        err << "error: no command selected\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace emovec
