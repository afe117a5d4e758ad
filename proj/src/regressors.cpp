#include "emovec/regressors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "emovec/embeddings.hpp"
#include "emovec/error.hpp"
#include "emovec/eval.hpp"
#include "emovec/rng.hpp"
#include "emovec/util.hpp"

namespace emovec {

namespace {

using json = nlohmann::json;

void check_batch(const FfnnModel& model, std::span<const LabeledVector> batch) {
    if (batch.empty()) {
        throw ArgumentError("batch must be non-empty");
    }
    for (const LabeledVector& sample : batch) {
        if (sample.features.size() != model.input_dim) {
            throw ArgumentError("feature dimension mismatch: expected " +
                                std::to_string(model.input_dim) + ", got " +
                                std::to_string(sample.features.size()));
        }
    }
}

// Forward pass for one example; returns prediction, fills pre-activations
// and dropped-out hidden activations.
double ffnn_forward(const FfnnModel& model, std::span<const double> x,
                    const std::uint8_t* keep, double keep_scale,
                    std::vector<double>& pre, std::vector<double>& hidden) {
    const std::size_t h = model.hidden_size;
    const std::size_t d = model.input_dim;
    pre.resize(h);
    hidden.resize(h);
    double out = model.output_bias;
    for (std::size_t j = 0; j < h; ++j) {
        double acc = model.hidden_bias[j];
        const double* w = model.hidden_weights.data() + j * d;
        for (std::size_t i = 0; i < d; ++i) acc += w[i] * x[i];
        pre[j] = acc;
        double act = acc > 0.0 ? acc : 0.0;
        if (keep) act = keep[j] ? act * keep_scale : 0.0;
        hidden[j] = act;
        out += model.output_weights[j] * act;
    }
    return out;
}

}  // namespace

double predict_ffnn(const FfnnModel& model, std::span<const double> input) {
    if (input.size() != model.input_dim) {
        throw ArgumentError("predict_ffnn: dimension mismatch");
    }
    std::vector<double> pre, hidden;
    return ffnn_forward(model, input, nullptr, 1.0, pre, hidden);
}

double ffnn_batch_mse(const FfnnModel& model, std::span<const LabeledVector> batch,
                      const DropoutMask* mask) {
    check_batch(model, batch);
    const std::size_t h = model.hidden_size;
    double keep_scale = mask ? 1.0 / (1.0 - mask->rate) : 1.0;
    std::vector<double> pre, hidden;
    double sum = 0.0;
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const std::uint8_t* keep = mask ? mask->keep.data() + b * h : nullptr;
        double out = ffnn_forward(model, batch[b].features, keep, keep_scale, pre, hidden);
        double diff = out - batch[b].target;
        sum += diff * diff;
    }
    return sum / static_cast<double>(batch.size());
}

FfnnGradient ffnn_gradient(const FfnnModel& model, std::span<const LabeledVector> batch,
                           const DropoutMask* mask) {
    check_batch(model, batch);
    const std::size_t h = model.hidden_size;
    const std::size_t d = model.input_dim;
    if (mask && mask->keep.size() != batch.size() * h) {
        throw ArgumentError("dropout mask size mismatch");
    }
    double keep_scale = mask ? 1.0 / (1.0 - mask->rate) : 1.0;

    FfnnGradient grad;
    grad.hidden_weights.assign(h * d, 0.0);
    grad.hidden_bias.assign(h, 0.0);
    grad.output_weights.assign(h, 0.0);
    grad.output_bias = 0.0;

    std::vector<double> pre, hidden;
    const double inv_m = 1.0 / static_cast<double>(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const std::uint8_t* keep = mask ? mask->keep.data() + b * h : nullptr;
        std::span<const double> x = batch[b].features;
        double out = ffnn_forward(model, x, keep, keep_scale, pre, hidden);
        double dout = 2.0 * (out - batch[b].target) * inv_m;

        grad.output_bias += dout;
        for (std::size_t j = 0; j < h; ++j) {
            grad.output_weights[j] += dout * hidden[j];
            double dh = dout * model.output_weights[j];
            if (keep) dh = keep[j] ? dh * keep_scale : 0.0;
            if (pre[j] <= 0.0) continue;  // ReLU gate (derivative 0 at the kink)
            grad.hidden_bias[j] += dh;
            double* gw = grad.hidden_weights.data() + j * d;
            for (std::size_t i = 0; i < d; ++i) gw[i] += dh * x[i];
        }
    }
    return grad;
}

namespace {

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               const TrainConfig& cfg, double bias1, double bias2) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
        double m_hat = state.m[i] / bias1;
        double v_hat = state.v[i] / bias2;
        params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_epsilon);
    }
}

}  // namespace

FfnnModel train_ffnn(std::span<const LabeledVector> data, const TrainConfig& config,
                     FfnnTrainStats* stats) {
    if (data.empty()) {
        throw ArgumentError("train_ffnn: data must be non-empty");
    }
    if (config.hidden_size <= 0 || config.epochs <= 0 || config.batch_size <= 0 ||
        config.learning_rate <= 0.0) {
        throw ArgumentError("train_ffnn: hyperparameters must be positive");
    }
    const std::size_t d = data[0].features.size();
    const std::size_t h = static_cast<std::size_t>(config.hidden_size);
    for (const LabeledVector& sample : data) {
        if (sample.features.size() != d) {
            throw ArgumentError("train_ffnn: inconsistent feature dimensions");
        }
    }

    FfnnModel model;
    model.input_dim = d;
    model.hidden_size = h;
    model.dropout_rate = config.dropout_rate;
    model.train_seed = config.seed;
    model.hidden_weights.resize(h * d);
    model.hidden_bias.assign(h, 0.0);
    model.output_weights.resize(h);
    model.output_bias = 0.0;

    // Draw order is fixed: hidden weights row-major, then output weights.
    SplitMix64 gen(config.seed);
    double hidden_limit = std::sqrt(6.0 / static_cast<double>(d + h));
    for (double& w : model.hidden_weights) w = gen.next_double(-hidden_limit, hidden_limit);
    double output_limit = std::sqrt(6.0 / static_cast<double>(h + 1));
    for (double& w : model.output_weights) w = gen.next_double(-output_limit, output_limit);

    if (stats) stats->initial_mse = ffnn_batch_mse(model, data);

    AdamState st_hw{std::vector<double>(h * d, 0.0), std::vector<double>(h * d, 0.0)};
    AdamState st_hb{std::vector<double>(h, 0.0), std::vector<double>(h, 0.0)};
    AdamState st_ow{std::vector<double>(h, 0.0), std::vector<double>(h, 0.0)};
    double m_ob = 0.0, v_ob = 0.0;

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<LabeledVector> batch;
    long long step = 0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        seeded_shuffle(order, gen);
        for (std::size_t start = 0; start < data.size();
             start += static_cast<std::size_t>(config.batch_size)) {
            std::size_t end =
                std::min(data.size(), start + static_cast<std::size_t>(config.batch_size));
            batch.clear();
            for (std::size_t i = start; i < end; ++i) batch.push_back(data[order[i]]);

            DropoutMask mask;
            const DropoutMask* mask_ptr = nullptr;
            if (config.dropout_rate > 0.0) {
                mask.rate = config.dropout_rate;
                mask.keep.resize(batch.size() * h);
                for (std::uint8_t& bit : mask.keep) {
                    bit = gen.next_double() >= config.dropout_rate ? 1 : 0;
                }
                mask_ptr = &mask;
            }

            double loss = ffnn_batch_mse(model, batch, mask_ptr);
            if (!std::isfinite(loss)) {
                throw DivergenceError("non-finite training loss in epoch " +
                                      std::to_string(epoch + 1));
            }
            FfnnGradient grad = ffnn_gradient(model, batch, mask_ptr);

            ++step;
            double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
            double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
            adam_step(model.hidden_weights, grad.hidden_weights, st_hw, config, bias1, bias2);
            adam_step(model.hidden_bias, grad.hidden_bias, st_hb, config, bias1, bias2);
            adam_step(model.output_weights, grad.output_weights, st_ow, config, bias1, bias2);
            m_ob = config.beta1 * m_ob + (1.0 - config.beta1) * grad.output_bias;
            v_ob = config.beta2 * v_ob + (1.0 - config.beta2) * grad.output_bias * grad.output_bias;
            model.output_bias -=
                config.learning_rate * (m_ob / bias1) / (std::sqrt(v_ob / bias2) + config.adam_epsilon);
        }
    }

    double final_mse = ffnn_batch_mse(model, data);
    if (!std::isfinite(final_mse)) {
        throw DivergenceError("non-finite loss after final epoch");
    }
    if (stats) stats->final_mse = final_mse;
    return model;
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    if (a.size() != b.size()) {
        throw ArgumentError("rbf_kernel: dimension mismatch");
    }
    double dist2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        dist2 += diff * diff;
    }
    return std::exp(-gamma * dist2);
}

double predict_svr(const SvrModel& model, std::span<const double> input) {
    if (input.size() != model.input_dim) {
        throw ArgumentError("predict_svr: dimension mismatch");
    }
    double out = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
        out += model.dual_coefficients[i] * rbf_kernel(model.support_vectors[i], input, model.gamma);
    }
    return out;
}

double svr_dual_objective(std::span<const LabeledVector> data, double gamma, double epsilon,
                          std::span<const double> alpha, std::span<const double> alpha_star) {
    const std::size_t n = data.size();
    if (alpha.size() != n || alpha_star.size() != n) {
        throw ArgumentError("svr_dual_objective: coefficient length mismatch");
    }
    std::vector<double> beta(n);
    for (std::size_t i = 0; i < n; ++i) beta[i] = alpha[i] - alpha_star[i];
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (beta[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (beta[j] == 0.0) continue;
            quad += beta[i] * beta[j] * rbf_kernel(data[i].features, data[j].features, gamma);
        }
    }
    double linear = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        linear += epsilon * (alpha[i] + alpha_star[i]) - data[i].target * beta[i];
    }
    return 0.5 * quad + linear;
}

SvrModel train_svr(std::span<const LabeledVector> data, const TrainConfig& config,
                   SvrTrainDiagnostics* diagnostics) {
    if (data.empty()) {
        throw ArgumentError("train_svr: data must be non-empty");
    }
    const std::size_t n = data.size();
    const std::size_t d = data[0].features.size();
    for (const LabeledVector& sample : data) {
        if (sample.features.size() != d) {
            throw ArgumentError("train_svr: inconsistent feature dimensions");
        }
    }
    const SvrConfig& svr = config.svr;
    if (svr.C <= 0.0 || svr.epsilon < 0.0 || svr.tolerance <= 0.0 || svr.max_passes <= 0) {
        throw ArgumentError("train_svr: invalid SVR hyperparameters");
    }
    const double gamma = svr.gamma > 0.0 ? svr.gamma : 1.0 / static_cast<double>(d);
    const double C = svr.C;

    // Dense kernel matrix; training sets here are small (<= a few thousand).
    std::vector<double> K(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        K[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double k = rbf_kernel(data[i].features, data[j].features, gamma);
            K[i * n + j] = k;
            K[j * n + i] = k;
        }
    }

    // 2n variables: lambda[t] = alpha_t for t < n, alpha*_{t-n} otherwise,
    // with sign s_t = +1 / -1 and constraint sum_t s_t lambda_t = 0.
    const std::size_t m = 2 * n;
    auto sign = [n](std::size_t t) { return t < n ? 1.0 : -1.0; };
    auto point = [n](std::size_t t) { return t < n ? t : t - n; };

    std::vector<double> lambda(m, 0.0);
    std::vector<double> grad(m);
    for (std::size_t t = 0; t < m; ++t) {
        grad[t] = svr.epsilon - sign(t) * data[point(t)].target;
    }

    const std::size_t max_iterations =
        static_cast<std::size_t>(svr.max_passes) * m;
    bool converged = false;
    std::size_t iterations = 0;

    while (iterations < max_iterations) {
        // Maximal violating pair over -s_t G_t.
        double up_best = -std::numeric_limits<double>::infinity();
        double low_best = std::numeric_limits<double>::infinity();
        std::size_t up_idx = m, low_idx = m;
        for (std::size_t t = 0; t < m; ++t) {
            double v = -sign(t) * grad[t];
            bool in_up = sign(t) > 0 ? lambda[t] < C : lambda[t] > 0.0;
            bool in_low = sign(t) > 0 ? lambda[t] > 0.0 : lambda[t] < C;
            if (in_up && v > up_best) {
                up_best = v;
                up_idx = t;
            }
            if (in_low && v < low_best) {
                low_best = v;
                low_idx = t;
            }
        }
        if (up_idx == m || low_idx == m || up_best - low_best <= svr.tolerance) {
            converged = true;
            break;
        }
        ++iterations;

        std::size_t i = up_idx, j = low_idx;
        double si = sign(i), sj = sign(j);
        double eta = K[point(i) * n + point(i)] + K[point(j) * n + point(j)] -
                     2.0 * K[point(i) * n + point(j)];
        if (eta < 1e-12) eta = 1e-12;
        double delta = (up_best - low_best) / eta;  // = -(siGi - sjGj)/eta > 0

        // Clip so both variables stay inside [0, C].
        double hi_i = si > 0 ? C - lambda[i] : lambda[i];
        double hi_j = sj > 0 ? lambda[j] : C - lambda[j];
        delta = std::min(delta, std::min(hi_i, hi_j));
        if (delta <= 0.0) continue;  // numerically stuck pair; re-select

        lambda[i] += si * delta;
        lambda[j] -= sj * delta;
        for (std::size_t t = 0; t < m; ++t) {
            grad[t] += sign(t) * delta *
                       (K[point(t) * n + point(i)] - K[point(t) * n + point(j)]);
        }
    }

    // Bias from free variables, else from the violating-pair bounds.
    double bias;
    {
        double sum = 0.0;
        std::size_t free_count = 0;
        for (std::size_t t = 0; t < m; ++t) {
            if (lambda[t] > 0.0 && lambda[t] < C) {
                sum += -sign(t) * grad[t];
                ++free_count;
            }
        }
        if (free_count > 0) {
            bias = sum / static_cast<double>(free_count);
        } else {
            double up_best = -std::numeric_limits<double>::infinity();
            double low_best = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < m; ++t) {
                double v = -sign(t) * grad[t];
                bool in_up = sign(t) > 0 ? lambda[t] < C : lambda[t] > 0.0;
                bool in_low = sign(t) > 0 ? lambda[t] > 0.0 : lambda[t] < C;
                if (in_up) up_best = std::max(up_best, v);
                if (in_low) low_best = std::min(low_best, v);
            }
            bias = 0.5 * (up_best + low_best);
        }
    }

    SvrModel model;
    model.input_dim = d;
    model.gamma = gamma;
    model.C = C;
    model.epsilon = svr.epsilon;
    model.bias = bias;
    model.converged = converged;
    model.iterations = iterations;
    for (std::size_t i = 0; i < n; ++i) {
        double coef = lambda[i] - lambda[n + i];
        if (coef != 0.0) {
            model.support_vectors.push_back(data[i].features);
            model.dual_coefficients.push_back(coef);
        }
    }

    if (diagnostics) {
        diagnostics->alpha.assign(lambda.begin(), lambda.begin() + std::ptrdiff_t(n));
        diagnostics->alpha_star.assign(lambda.begin() + std::ptrdiff_t(n), lambda.end());
        diagnostics->dual_objective =
            svr_dual_objective(data, gamma, svr.epsilon, diagnostics->alpha,
                               diagnostics->alpha_star);
    }
    return model;
}

ModelKind RegressionModel::kind() const {
    return std::holds_alternative<FfnnModel>(impl_) ? ModelKind::ffnn : ModelKind::svr;
}

double RegressionModel::predict(std::span<const double> input) const {
    return std::visit(
        [&](const auto& model) -> double {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, FfnnModel>) {
                return predict_ffnn(model, input);
            } else {
                return predict_svr(model, input);
            }
        },
        impl_);
}

std::size_t RegressionModel::input_dim() const {
    return std::visit([](const auto& model) { return model.input_dim; }, impl_);
}

std::string_view model_kind_name(ModelKind kind) {
    return kind == ModelKind::ffnn ? "ffnn" : "svr";
}

std::string model_to_json(const RegressionModel& model) {
    json doc;
    if (model.kind() == ModelKind::ffnn) {
        const FfnnModel& m = model.ffnn();
        doc = {
            {"kind", "ffnn"},
            {"input_dim", m.input_dim},
            {"hidden_size", m.hidden_size},
            {"dropout_rate", m.dropout_rate},
            {"train_seed", m.train_seed},
            {"parameters",
             {{"hidden_weights", doubles_to_base64(m.hidden_weights)},
              {"hidden_bias", doubles_to_base64(m.hidden_bias)},
              {"output_weights", doubles_to_base64(m.output_weights)},
              {"output_bias", m.output_bias}}},
        };
    } else {
        const SvrModel& m = model.svr();
        std::vector<double> flat;
        flat.reserve(m.support_vectors.size() * m.input_dim);
        for (const auto& sv : m.support_vectors) {
            flat.insert(flat.end(), sv.begin(), sv.end());
        }
        doc = {
            {"kind", "svr"},
            {"input_dim", m.input_dim},
            {"gamma", m.gamma},
            {"C", m.C},
            {"epsilon", m.epsilon},
            {"converged", m.converged},
            {"parameters",
             {{"support_vectors", doubles_to_base64(flat)},
              {"dual_coefficients", doubles_to_base64(m.dual_coefficients)},
              {"bias", m.bias}}},
        };
    }
    return doc.dump(2) + "\n";
}

RegressionModel model_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid model JSON: ") + e.what());
    }
    try {
        std::string kind = doc.at("kind").get<std::string>();
        const json& params = doc.at("parameters");
        if (kind == "ffnn") {
            FfnnModel m;
            m.input_dim = doc.at("input_dim").get<std::size_t>();
            m.hidden_size = doc.at("hidden_size").get<std::size_t>();
            m.dropout_rate = doc.at("dropout_rate").get<double>();
            m.train_seed = doc.at("train_seed").get<std::uint64_t>();
            m.hidden_weights = base64_to_doubles(params.at("hidden_weights").get<std::string>());
            m.hidden_bias = base64_to_doubles(params.at("hidden_bias").get<std::string>());
            m.output_weights = base64_to_doubles(params.at("output_weights").get<std::string>());
            m.output_bias = params.at("output_bias").get<double>();
            if (m.hidden_weights.size() != m.hidden_size * m.input_dim ||
                m.hidden_bias.size() != m.hidden_size ||
                m.output_weights.size() != m.hidden_size) {
                throw ParseError("ffnn parameter shapes inconsistent");
            }
            return RegressionModel(std::move(m));
        }
        if (kind == "svr") {
            SvrModel m;
            m.input_dim = doc.at("input_dim").get<std::size_t>();
            m.gamma = doc.at("gamma").get<double>();
            m.C = doc.at("C").get<double>();
            m.epsilon = doc.at("epsilon").get<double>();
            m.converged = doc.value("converged", true);
            std::vector<double> flat =
                base64_to_doubles(params.at("support_vectors").get<std::string>());
            m.dual_coefficients =
                base64_to_doubles(params.at("dual_coefficients").get<std::string>());
            m.bias = params.at("bias").get<double>();
            if (m.input_dim == 0 || flat.size() != m.dual_coefficients.size() * m.input_dim) {
                throw ParseError("svr parameter shapes inconsistent");
            }
            for (std::size_t i = 0; i < m.dual_coefficients.size(); ++i) {
                m.support_vectors.emplace_back(flat.begin() + std::ptrdiff_t(i * m.input_dim),
                                               flat.begin() + std::ptrdiff_t((i + 1) * m.input_dim));
            }
            return RegressionModel(std::move(m));
        }
        throw ParseError("unknown model kind: " + kind);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model JSON missing fields: ") + e.what());
    }
}

TrainedModels train_per_emotion(const DataSplit& split, const VectorSpace& space,
                                ModelKind kind, const TrainConfig& config) {
    TrainedModels result;
    for (const std::string& emotion : split.emotion_order) {
        const auto& train_words = split.partition(emotion, Partition::train);
        EmotionTrainStats stats;

        std::vector<LabeledVector> data;
        data.reserve(train_words.size());
        for (const ScoredWord& sw : train_words) {
            auto row = resolve_word(space, sw.word);
            if (!row || space.is_zero_norm(*row)) {
                ++stats.oov_skipped;
                continue;
            }
            auto vec = space.row(*row);
            data.push_back({{vec.begin(), vec.end()}, sw.score});
        }
        if (data.empty()) {
            throw ConfigError("no resolvable training words for emotion '" + emotion + "'");
        }
        stats.train_size = data.size();

        TrainConfig per_emotion = config;
        per_emotion.seed = derive_seed(config.seed, emotion);

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

        // Validation correlation, reported only (OOV pairs score 0.0).
        const auto& val_words = split.partition(emotion, Partition::validation);
        if (val_words.size() >= 2) {
            std::vector<double> predictions, gold;
            predictions.reserve(val_words.size());
            gold.reserve(val_words.size());
            for (const ScoredWord& sw : val_words) {
                auto row = resolve_word(space, sw.word);
                double pred = 0.0;
                if (row && !space.is_zero_norm(*row)) {
                    pred = model.predict(space.row(*row));
                }
                predictions.push_back(pred);
                gold.push_back(sw.score);
            }
            stats.validation_r = pearson(predictions, gold).r;
        }

        result.models.emplace(emotion, std::move(model));
        result.stats.emplace(emotion, stats);
    }
    return result;
}

}  // namespace emovec
