// Copyright 2026 The vemo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VEMO_MLR_H_
#define VEMO_MLR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vemo/emotion.h"
#include "vemo/vectorizer.h"

namespace vemo {

enum class ClassWeightMode { kUniform, kBalanced };

std::string_view class_weight_name(ClassWeightMode mode);
ClassWeightMode parse_class_weight(std::string_view name);

struct MlrConfig {
  double C = 1.0;  // multiplies the data term
  ClassWeightMode class_weight = ClassWeightMode::kUniform;
  int max_iterations = 1000;
  double tolerance = 1e-6;  // on the infinity norm of the gradient
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const MlrConfig&) const = default;
};

// Per-class sample weights s_c: N / (K * n_c) when balanced, 1 otherwise.
// `y` holds class indices in [0, n_classes). Throws DataError in balanced
// mode when some class has no samples.
std::vector<double> compute_class_weights(std::span<const int> y, std::size_t n_classes,
                                          ClassWeightMode mode);

struct TrainingSummary {
  int iterations = 0;
  bool converged = false;
  double final_loss = 0;
  double gradient_inf_norm = 0;
};

struct MlrModel {
  std::vector<EmotionLabel> labels;  // class order
  std::size_t n_features = 0;
  std::vector<double> weights;  // labels.size() x n_features, row-major
  std::vector<double> bias;     // labels.size()
  std::string vocab_fingerprint;
  MlrConfig config;
  TrainingSummary training;

  std::size_t n_classes() const { return labels.size(); }
  double weight(std::size_t k, std::size_t f) const { return weights[k * n_features + f]; }
};

// Throws std::invalid_argument on an index >= n_features.
std::vector<double> class_scores(const MlrModel& model, const SparseRow& row);
// Max-subtracted softmax.
std::vector<double> softmax(std::span<const double> scores);
std::vector<double> predict_proba(const MlrModel& model, const SparseRow& row);
// Argmax of predict_proba; ties go to the lowest class index.
EmotionLabel predict(const MlrModel& model, const SparseRow& row);
std::vector<EmotionLabel> predict_all(const MlrModel& model, const FeatureMatrix& matrix);

// Throws DataError when the model was trained on a different vocabulary.
void check_vocabulary(const MlrModel& model, const Vocabulary& vocab);

struct LossAndGradient {
  double loss = 0;
  std::vector<double> grad_weights;  // same layout as MlrModel::weights
  std::vector<double> grad_bias;
};

// J = 0.5 * ||W||_F^2 + C * sum_i s_{y_i} * (-ln p_{y_i}(x_i)); biases are
// not regularized. Throws std::runtime_error if J is not finite.
LossAndGradient loss_and_gradient(std::span<const double> weights, std::span<const double> bias,
                                  std::size_t n_features, std::span<const SparseRow> rows,
                                  std::span<const int> y, std::span<const double> class_weights,
                                  double C);

struct TrainResult {
  MlrModel model;
  std::vector<double> loss_history;  // objective after each accepted step, starting at W = 0
};

// Full-batch L-BFGS with a backtracking Armijo line search from W = 0,
// b = 0. Deterministic for fixed inputs. The class set is the labels present
// in `y`, in canonical order; fewer than two classes is a DataError. A run
// that hits max_iterations is returned with training.converged = false.
TrainResult train(const FeatureMatrix& matrix, std::span<const EmotionLabel> y,
                  const MlrConfig& config, std::string vocab_fingerprint = {});

nlohmann::ordered_json model_to_json(const MlrModel& model);
MlrModel model_from_json(const nlohmann::json& j);

}  // namespace vemo

#endif  // VEMO_MLR_H_
