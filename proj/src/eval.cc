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

#include "vemo/eval.h"

#include <algorithm>
#include <cstdio>

#include "vemo/error.h"

namespace vemo {

EvalReport evaluate(std::span<const EmotionLabel> gold, std::span<const EmotionLabel> predicted) {
  if (gold.size() != predicted.size())
    throw DataError("gold and predicted label sequences differ in length (" +
                    std::to_string(gold.size()) + " vs " + std::to_string(predicted.size()) + ")");
  if (gold.empty()) throw DataError("cannot evaluate an empty label sequence");

  EvalReport r;
  r.n = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++r.confusion[static_cast<std::size_t>(label_index(gold[i]))]
                 [static_cast<std::size_t>(label_index(predicted[i]))];
  }
  std::size_t correct = 0;
  for (std::size_t c = 0; c < kNumEmotions; ++c) correct += r.confusion[c][c];
  const double n = static_cast<double>(r.n);
  r.accuracy = static_cast<double>(correct) / n;

  std::size_t active = 0;
  double macro = 0;
  for (std::size_t c = 0; c < kNumEmotions; ++c) {
    ClassMetrics& m = r.per_class[c];
    for (std::size_t k = 0; k < kNumEmotions; ++k) {
      m.support += r.confusion[c][k];
      m.predicted += r.confusion[k][c];
    }
    const double tp = static_cast<double>(r.confusion[c][c]);
    if (m.predicted > 0) {
      m.precision = tp / static_cast<double>(m.predicted);
    } else if (m.support > 0) {
      ++r.zero_division;
    }
    if (m.support > 0) {
      m.recall = tp / static_cast<double>(m.support);
    } else if (m.predicted > 0) {
      ++r.zero_division;
    }
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0;
    r.weighted_f1 += static_cast<double>(m.support) / n * m.f1;
    if (m.support > 0 || m.predicted > 0) {
      ++active;
      macro += m.f1;
    }
  }
  r.macro_f1 = active ? macro / static_cast<double>(active) : 0;
  return r;
}

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["accuracy"] = accuracy;
  j["weighted_f1"] = weighted_f1;
  j["macro_f1"] = macro_f1;
  j["zero_division"] = zero_division;
  nlohmann::ordered_json pc = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < kNumEmotions; ++c) {
    const ClassMetrics& m = per_class[c];
    pc[std::string(label_name(kAllEmotions[c]))] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
        {"support", m.support},     {"predicted", m.predicted},
    };
  }
  j["per_class"] = pc;
  std::vector<std::string> names;
  for (EmotionLabel l : kAllEmotions) names.emplace_back(label_name(l));
  j["confusion_labels"] = names;
  j["confusion"] = confusion;
  return j;
}

std::string EvalReport::to_table() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-10s %9s %9s %9s %8s\n", "label", "precision", "recall", "f1",
                "support");
  out += buf;
  for (std::size_t c = 0; c < kNumEmotions; ++c) {
    const ClassMetrics& m = per_class[c];
    std::snprintf(buf, sizeof(buf), "%-10s %9.4f %9.4f %9.4f %8zu\n",
                  std::string(label_name(kAllEmotions[c])).c_str(), m.precision, m.recall, m.f1,
                  m.support);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "\n%-10s %9.4f\n%-10s %9.4f\n%-10s %9.4f\n%-10s %9zu\n",
                "accuracy", accuracy, "weighted-f1", weighted_f1, "macro-f1", macro_f1, "n", n);
  out += buf;
  return out;
}

std::vector<ErrorCase> error_report(const Corpus& comments,
                                    std::span<const EmotionLabel> predicted,
                                    std::span<const SparseRow> rows, const MlrModel& model,
                                    const Vocabulary& vocab, std::size_t top_n) {
  if (comments.size() != predicted.size() || comments.size() != rows.size())
    throw DataError("error_report: comments, predictions and rows must be aligned");
  std::vector<ErrorCase> out;
  for (std::size_t i = 0; i < comments.size(); ++i) {
    if (comments[i].label == predicted[i]) continue;
    ErrorCase e{comments[i].id, comments[i].text, comments[i].label, predicted[i], {}};
    auto k = static_cast<std::size_t>(
        std::find(model.labels.begin(), model.labels.end(), predicted[i]) - model.labels.begin());
    if (k < model.n_classes()) {
      const SparseRow& row = rows[i];
      for (std::size_t t = 0; t < row.nnz(); ++t) {
        double w = model.weight(k, row.indices[t]);
        e.top_features.push_back(
            {vocab.entry(row.indices[t]).feature, row.values[t], w, w * row.values[t]});
      }
      std::stable_sort(e.top_features.begin(), e.top_features.end(),
                       [](const FeatureContribution& a, const FeatureContribution& b) {
                         return a.contribution > b.contribution;
                       });
      if (e.top_features.size() > top_n) e.top_features.resize(top_n);
    }
    out.push_back(std::move(e));
  }
  return out;
}

nlohmann::ordered_json error_report_to_json(const std::vector<ErrorCase>& errors) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : errors) {
    nlohmann::ordered_json feats = nlohmann::ordered_json::array();
    for (const auto& f : e.top_features) {
      feats.push_back({{"feature", f.feature},
                       {"value", f.value},
                       {"weight", f.weight},
                       {"contribution", f.contribution}});
    }
    arr.push_back({{"id", e.id},
                   {"text", e.text},
                   {"gold", label_name(e.gold)},
                   {"predicted", label_name(e.predicted)},
                   {"top_features", feats}});
  }
  return arr;
}

}  // namespace vemo
