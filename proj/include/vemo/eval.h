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

#ifndef VEMO_EVAL_H_
#define VEMO_EVAL_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vemo/corpus_io.h"
#include "vemo/emotion.h"
#include "vemo/mlr.h"
#include "vemo/vectorizer.h"

namespace vemo {

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;    // gold count
  std::size_t predicted = 0;  // predicted count
};

struct EvalReport {
  std::size_t n = 0;
  double accuracy = 0;
  double weighted_f1 = 0;  // headline metric
  // Mean F1 over labels occurring in gold or predictions.
  double macro_f1 = 0;
  std::array<ClassMetrics, kNumEmotions> per_class{};
  // confusion[gold][predicted], canonical label order.
  std::array<std::array<std::size_t, kNumEmotions>, kNumEmotions> confusion{};
  // Precision or recall denominators that were zero (metric set to 0).
  std::size_t zero_division = 0;

  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

// Throws DataError on length mismatch or empty input.
EvalReport evaluate(std::span<const EmotionLabel> gold, std::span<const EmotionLabel> predicted);

struct FeatureContribution {
  std::string feature;
  double value = 0;         // x_f
  double weight = 0;        // w_{predicted, f}
  double contribution = 0;  // weight * value
};

struct ErrorCase {
  std::string id;
  std::string text;
  EmotionLabel gold = EmotionLabel::kOther;
  EmotionLabel predicted = EmotionLabel::kOther;
  std::vector<FeatureContribution> top_features;  // descending contribution
};

// Misclassified comments in input order, each with its `top_n` strongest
// feature contributions towards the predicted class.
std::vector<ErrorCase> error_report(const Corpus& comments,
                                    std::span<const EmotionLabel> predicted,
                                    std::span<const SparseRow> rows, const MlrModel& model,
                                    const Vocabulary& vocab, std::size_t top_n);

nlohmann::ordered_json error_report_to_json(const std::vector<ErrorCase>& errors);

}  // namespace vemo

#endif  // VEMO_EVAL_H_
