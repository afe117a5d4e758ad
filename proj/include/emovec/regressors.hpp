#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "emovec/lexicon.hpp"

namespace emovec {

class VectorSpace;

struct LabeledVector {
    std::vector<double> features;
    double target;
};

struct SvrConfig {
    double C = 1.0;
    double epsilon = 0.1;
    double gamma = 0.0;  // 0 means the 1/d rule
    double tolerance = 1e-3;
    int max_passes = 1000;
};

struct TrainConfig {
    std::uint64_t seed = 0;
    int epochs = 200;
    int batch_size = 32;
    double learning_rate = 1e-3;
    double beta1 = 0.9;   // adaptive-moment decay, first moment
    double beta2 = 0.999; // second moment
    double adam_epsilon = 1e-8;
    int hidden_size = 64;
    double dropout_rate = 0.2;
    SvrConfig svr;
};

// Single hidden ReLU layer, linear output. Dropout applies during
// training only; prediction is deterministic.
struct FfnnModel {
    std::size_t input_dim = 0;
    std::size_t hidden_size = 0;
    std::vector<double> hidden_weights;  // hidden_size x input_dim, row-major
    std::vector<double> hidden_bias;     // hidden_size
    std::vector<double> output_weights;  // hidden_size
    double output_bias = 0.0;
    double dropout_rate = 0.0;
    std::uint64_t train_seed = 0;
};

double predict_ffnn(const FfnnModel& model, std::span<const double> input);

// Parameter gradients in model layout.
struct FfnnGradient {
    std::vector<double> hidden_weights;
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    double output_bias = 0.0;
};

// Inverted dropout mask for one batch: keep[i*hidden+j] says whether unit j
// stays active for example i; kept activations are scaled by 1/(1-rate).
struct DropoutMask {
    std::vector<std::uint8_t> keep;
    double rate = 0.0;
};

// Exact analytic gradient of the batch mean squared error. With a mask the
// gradient is for the dropped-out forward pass (the mask held fixed).
FfnnGradient ffnn_gradient(const FfnnModel& model, std::span<const LabeledVector> batch,
                           const DropoutMask* mask = nullptr);

// Batch mean squared error under the same forward pass as ffnn_gradient.
double ffnn_batch_mse(const FfnnModel& model, std::span<const LabeledVector> batch,
                      const DropoutMask* mask = nullptr);

struct FfnnTrainStats {
    double initial_mse = 0.0;
    double final_mse = 0.0;
};

FfnnModel train_ffnn(std::span<const LabeledVector> data, const TrainConfig& config,
                     FfnnTrainStats* stats = nullptr);

// RBF-kernel support vector regressor: f(x) = sum_i coef_i K(sv_i, x) + bias
// with K(x, z) = exp(-gamma * ||x - z||^2). Only vectors with nonzero dual
// coefficient are stored.
struct SvrModel {
    std::size_t input_dim = 0;
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefficients;  // alpha - alpha*
    double bias = 0.0;
    double gamma = 0.0;
    double C = 0.0;
    double epsilon = 0.0;
    bool converged = true;
    std::size_t iterations = 0;
};

double predict_svr(const SvrModel& model, std::span<const double> input);

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

// Final dual variables of a training run, for inspection and oracles.
struct SvrTrainDiagnostics {
    std::vector<double> alpha;
    std::vector<double> alpha_star;
    double dual_objective = 0.0;
};

// Solves the epsilon-insensitive dual by SMO over maximal-violating pairs.
// The iteration cap is max_passes * 2n; hitting it returns the model with
// `converged` cleared.
SvrModel train_svr(std::span<const LabeledVector> data, const TrainConfig& config,
                   SvrTrainDiagnostics* diagnostics = nullptr);

// Dual objective 1/2 b'Kb + eps*sum(a+a*) - y'b with b = a - a*.
double svr_dual_objective(std::span<const LabeledVector> data, double gamma, double epsilon,
                          std::span<const double> alpha, std::span<const double> alpha_star);

enum class ModelKind { ffnn, svr };

std::string_view model_kind_name(ModelKind kind);

class RegressionModel {
public:
    RegressionModel() = default;
    explicit RegressionModel(FfnnModel model) : impl_(std::move(model)) {}
    explicit RegressionModel(SvrModel model) : impl_(std::move(model)) {}

    ModelKind kind() const;
    double predict(std::span<const double> input) const;
    std::size_t input_dim() const;

    const FfnnModel& ffnn() const { return std::get<FfnnModel>(impl_); }
    const SvrModel& svr() const { return std::get<SvrModel>(impl_); }

private:
    std::variant<FfnnModel, SvrModel> impl_;
};

// Self-describing JSON with base64-encoded little-endian float64 arrays.
std::string model_to_json(const RegressionModel& model);
RegressionModel model_from_json(std::string_view text);

struct EmotionTrainStats {
    std::size_t train_size = 0;
    std::size_t oov_skipped = 0;
    double final_training_mse = 0.0;
    std::optional<double> validation_r;  // absent when validation has < 2 points
    bool svr_converged = true;
};

struct TrainedModels {
    std::map<std::string, RegressionModel> models;
    std::map<std::string, EmotionTrainStats> stats;
};

// One model per emotion, trained on that emotion's training partition.
// Training words that do not resolve in the space (or have zero norm) are
// skipped and counted. The validation partition is only ever reported on.
TrainedModels train_per_emotion(const DataSplit& split, const VectorSpace& space,
                                ModelKind kind, const TrainConfig& config);

}  // namespace emovec
