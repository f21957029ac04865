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

#include "vemo/mlr.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "vemo/error.h"

namespace vemo {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Objective over the packed parameter vector [W row-major ; b]. Returns
// +inf instead of throwing so the line search can back off.
struct Objective {
  std::size_t n_features;
  std::size_t n_classes;
  std::span<const SparseRow> rows;
  std::span<const int> y;
  std::span<const double> class_weights;
  double C;

  std::size_t size() const { return n_classes * (n_features + 1); }

  double operator()(std::span<const double> x, std::vector<double>& grad) const {
    const std::size_t K = n_classes;
    const std::size_t V = n_features;
    const std::span<const double> W = x.first(K * V);
    const std::span<const double> b = x.subspan(K * V, K);
    grad.assign(x.size(), 0.0);
    double data_loss = 0;
    std::vector<double> z(K);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SparseRow& row = rows[i];
      for (std::size_t k = 0; k < K; ++k) {
        double s = b[k];
        const double* wk = W.data() + k * V;
        for (std::size_t t = 0; t < row.nnz(); ++t) s += wk[row.indices[t]] * row.values[t];
        z[k] = s;
      }
      const auto yi = static_cast<std::size_t>(y[i]);
      const double zmax = *std::max_element(z.begin(), z.end());
      const double margin = z[yi] - zmax;
      double sum = 0;
      for (std::size_t k = 0; k < K; ++k) {
        z[k] = std::exp(z[k] - zmax);
        sum += z[k];
      }
      const double scale = C * class_weights[yi];
      data_loss += scale * (std::log(sum) - margin);
      for (std::size_t k = 0; k < K; ++k) {
        double coef = scale * (z[k] / sum - (k == yi ? 1.0 : 0.0));
        grad[K * V + k] += coef;
        double* gk = grad.data() + k * V;
        for (std::size_t t = 0; t < row.nnz(); ++t) gk[row.indices[t]] += coef * row.values[t];
      }
    }
    double reg = 0;
    for (std::size_t j = 0; j < K * V; ++j) {
      reg += W[j] * W[j];
      grad[j] += W[j];
    }
    double loss = 0.5 * reg + data_loss;
    if (!std::isfinite(loss)) return std::numeric_limits<double>::infinity();
    return loss;
  }
};

}  // namespace

std::string_view class_weight_name(ClassWeightMode mode) {
  return mode == ClassWeightMode::kBalanced ? "balanced" : "uniform";
}

ClassWeightMode parse_class_weight(std::string_view name) {
  if (name == "balanced") return ClassWeightMode::kBalanced;
  if (name == "uniform" || name == "none") return ClassWeightMode::kUniform;
  throw ConfigError("unknown class weight mode '" + std::string(name) +
                    "' (expected uniform or balanced)");
}

void MlrConfig::validate() const {
  if (!(C > 0) || !std::isfinite(C)) throw ConfigError("C must be a positive finite number");
  if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (max_iterations <= 0) throw ConfigError("max_iterations must be positive");
}

std::vector<double> compute_class_weights(std::span<const int> y, std::size_t n_classes,
                                          ClassWeightMode mode) {
  std::vector<double> weights(n_classes, 1.0);
  if (mode == ClassWeightMode::kUniform) return weights;
  std::vector<std::size_t> counts(n_classes, 0);
  for (int c : y) {
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes)
      throw std::invalid_argument("class index out of range");
    ++counts[static_cast<std::size_t>(c)];
  }
  const double n = static_cast<double>(y.size());
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts[c] == 0)
      throw DataError("balanced class weights are undefined: class " + std::to_string(c) +
                      " has no training samples");
    weights[c] = n / (static_cast<double>(n_classes) * static_cast<double>(counts[c]));
  }
  return weights;
}

std::vector<double> class_scores(const MlrModel& model, const SparseRow& row) {
  std::vector<double> z(model.bias);
  for (std::size_t t = 0; t < row.nnz(); ++t) {
    if (row.indices[t] >= model.n_features)
      throw std::invalid_argument("feature index " + std::to_string(row.indices[t]) +
                                  " is outside the model's " + std::to_string(model.n_features) +
                                  " features");
  }
  for (std::size_t k = 0; k < model.n_classes(); ++k) {
    const double* wk = model.weights.data() + k * model.n_features;
    double s = z[k];
    for (std::size_t t = 0; t < row.nnz(); ++t) s += wk[row.indices[t]] * row.values[t];
    z[k] = s;
  }
  return z;
}

std::vector<double> softmax(std::span<const double> scores) {
  std::vector<double> p(scores.begin(), scores.end());
  if (p.empty()) return p;
  double m = *std::max_element(p.begin(), p.end());
  double sum = 0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> predict_proba(const MlrModel& model, const SparseRow& row) {
  return softmax(class_scores(model, row));
}

EmotionLabel predict(const MlrModel& model, const SparseRow& row) {
  std::vector<double> p = predict_proba(model, row);
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p[k] > p[best]) best = k;
  return model.labels[best];
}

std::vector<EmotionLabel> predict_all(const MlrModel& model, const FeatureMatrix& matrix) {
  std::vector<EmotionLabel> out;
  out.reserve(matrix.n_docs());
  for (const auto& row : matrix.rows) out.push_back(predict(model, row));
  return out;
}

void check_vocabulary(const MlrModel& model, const Vocabulary& vocab) {
  if (model.n_features != vocab.size() ||
      (!model.vocab_fingerprint.empty() && model.vocab_fingerprint != vocab.fingerprint()))
    throw DataError("model was trained on a different vocabulary (fingerprint " +
                    model.vocab_fingerprint + ", vocabulary " + vocab.fingerprint() + ")");
}

LossAndGradient loss_and_gradient(std::span<const double> weights, std::span<const double> bias,
                                  std::size_t n_features, std::span<const SparseRow> rows,
                                  std::span<const int> y, std::span<const double> class_weights,
                                  double C) {
  const std::size_t K = bias.size();
  if (weights.size() != K * n_features || rows.size() != y.size() || class_weights.size() != K)
    throw std::invalid_argument("loss_and_gradient: inconsistent shapes");
  std::vector<double> x(weights.begin(), weights.end());
  x.insert(x.end(), bias.begin(), bias.end());
  Objective f{n_features, K, rows, y, class_weights, C};
  std::vector<double> g;
  LossAndGradient out;
  out.loss = f(x, g);
  if (!std::isfinite(out.loss)) throw std::runtime_error("objective is not finite");
  out.grad_weights.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(K * n_features));
  out.grad_bias.assign(g.begin() + static_cast<std::ptrdiff_t>(K * n_features), g.end());
  return out;
}

TrainResult train(const FeatureMatrix& matrix, std::span<const EmotionLabel> y,
                  const MlrConfig& config, std::string vocab_fingerprint) {
  config.validate();
  if (matrix.rows.empty()) throw DataError("cannot train on an empty feature matrix");
  if (matrix.rows.size() != y.size())
    throw DataError("feature matrix has " + std::to_string(matrix.rows.size()) + " rows but " +
                    std::to_string(y.size()) + " labels were given");

  std::array<bool, kNumEmotions> present{};
  for (EmotionLabel l : y) present[static_cast<std::size_t>(label_index(l))] = true;
  std::vector<EmotionLabel> labels;
  std::array<int, kNumEmotions> class_of{};
  for (EmotionLabel l : kAllEmotions) {
    if (present[static_cast<std::size_t>(label_index(l))]) {
      class_of[static_cast<std::size_t>(label_index(l))] = static_cast<int>(labels.size());
      labels.push_back(l);
    }
  }
  if (labels.size() < 2)
    throw DataError("training data must contain at least two emotion labels");
  std::vector<int> yi;
  yi.reserve(y.size());
  for (EmotionLabel l : y) yi.push_back(class_of[static_cast<std::size_t>(label_index(l))]);

  const std::size_t K = labels.size();
  const std::size_t V = matrix.n_features;
  std::vector<double> sw = compute_class_weights(yi, K, config.class_weight);
  Objective f{V, K, matrix.rows, yi, sw, config.C};

  constexpr std::size_t kMemory = 10;
  constexpr double kArmijo = 1e-4;
  constexpr double kCurvature = 0.9;
  constexpr double kNoise = 1e-10;
  std::vector<double> x(f.size(), 0.0);
  std::vector<double> g;
  double fx = f(x, g);
  if (!std::isfinite(fx)) throw std::runtime_error("objective is not finite at the start point");

  TrainResult result;
  result.loss_history.push_back(fx);
  std::deque<std::vector<double>> s_hist;
  std::deque<std::vector<double>> y_hist;
  std::deque<double> rho_hist;
  std::vector<double> d(x.size());
  std::vector<double> x_new(x.size());
  std::vector<double> g_new;
  std::vector<double> alpha(kMemory);

  int iter = 0;
  bool converged = inf_norm(g) < config.tolerance;
  while (!converged && iter < config.max_iterations) {
    // Two-loop recursion: d = -H g.
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g[i];
    const std::size_t m = s_hist.size();
    for (std::size_t j = m; j-- > 0;) {
      alpha[j] = rho_hist[j] * dot(s_hist[j], d);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alpha[j] * y_hist[j][i];
    }
    if (m > 0) {
      double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double& v : d) v *= gamma;
    }
    for (std::size_t j = 0; j < m; ++j) {
      double beta = rho_hist[j] * dot(y_hist[j], d);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += s_hist[j][i] * (alpha[j] - beta);
    }
    double gd = dot(g, d);
    if (!(gd < 0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g[i];
      gd = dot(g, d);
    }
    double step = 1.0;
    if (s_hist.empty()) step = std::min(1.0, 1.0 / std::sqrt(dot(g, g)));

    double f_new = 0;
    bool accepted = false;
    while (step > 1e-20) {
      for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + step * d[i];
      f_new = f(x_new, g_new);
      if (f_new <= fx + kArmijo * step * gd) {
        accepted = true;
        break;
      }
      // Near the optimum the decrease drops below the rounding noise of fx
      // and Armijo can no longer tell. Fall back to the approximate Wolfe
      // test of Hager and Zhang, which only looks at the slope.
      if (f_new <= fx + kNoise * std::abs(fx) && dot(g_new, d) <= (2 * kArmijo - 1) * gd &&
          dot(g_new, d) >= kCurvature * gd) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!s_hist.empty()) {
        // Curvature memory produced a useless direction; retry steepest descent.
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        continue;
      }
      break;  // no further decrease is representable
    }

    std::vector<double> s(x.size());
    std::vector<double> yv(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s[i] = x_new[i] - x[i];
      yv[i] = g_new[i] - g[i];
    }
    double sy = dot(s, yv);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(yv, yv))) {
      if (s_hist.size() == kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
    }
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    ++iter;
    result.loss_history.push_back(fx);
    converged = inf_norm(g) < config.tolerance;
  }

  MlrModel& model = result.model;
  model.labels = std::move(labels);
  model.n_features = V;
  model.weights.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(K * V));
  model.bias.assign(x.begin() + static_cast<std::ptrdiff_t>(K * V), x.end());
  model.vocab_fingerprint = std::move(vocab_fingerprint);
  model.config = config;
  model.training = {iter, converged, fx, inf_norm(g)};
  return result;
}

nlohmann::ordered_json model_to_json(const MlrModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "vemo-mlr";
  j["version"] = 1;
  std::vector<std::string> names;
  for (EmotionLabel l : model.labels) names.emplace_back(label_name(l));
  j["labels"] = names;
  j["n_features"] = model.n_features;
  j["vocab_fingerprint"] = model.vocab_fingerprint;
  j["config"] = {
      {"C", model.config.C},
      {"class_weight", class_weight_name(model.config.class_weight)},
      {"max_iterations", model.config.max_iterations},
      {"tolerance", model.config.tolerance},
      {"seed", model.config.seed},
  };
  j["training"] = {
      {"iterations", model.training.iterations},
      {"converged", model.training.converged},
      {"final_loss", model.training.final_loss},
      {"gradient_inf_norm", model.training.gradient_inf_norm},
  };
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  return j;
}

MlrModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "vemo-mlr") throw DataError("not a vemo MLR model");
    MlrModel m;
    for (const auto& name : j.at("labels")) m.labels.push_back(parse_label(name.get<std::string>()));
    m.n_features = j.at("n_features").get<std::size_t>();
    m.vocab_fingerprint = j.at("vocab_fingerprint").get<std::string>();
    const auto& c = j.at("config");
    m.config.C = c.at("C").get<double>();
    m.config.class_weight = parse_class_weight(c.at("class_weight").get<std::string>());
    m.config.max_iterations = c.at("max_iterations").get<int>();
    m.config.tolerance = c.at("tolerance").get<double>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    const auto& t = j.at("training");
    m.training.iterations = t.at("iterations").get<int>();
    m.training.converged = t.at("converged").get<bool>();
    m.training.final_loss = t.at("final_loss").get<double>();
    m.training.gradient_inf_norm = t.at("gradient_inf_norm").get<double>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<std::vector<double>>();
    if (m.bias.size() != m.labels.size() || m.weights.size() != m.labels.size() * m.n_features)
      throw DataError("model parameter shapes do not match its label count and feature count");
    for (double w : m.weights)
      if (!std::isfinite(w)) throw DataError("model contains non-finite weights");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

}  // namespace vemo
