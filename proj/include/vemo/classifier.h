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

#ifndef VEMO_CLASSIFIER_H_
#define VEMO_CLASSIFIER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vemo/emotion.h"
#include "vemo/mlr.h"
#include "vemo/vectorizer.h"

namespace vemo {

// A fitted vectorizer bound to a model trained on its vocabulary. Text is
// expected to be normalized already. `removals` (technique 7) are filtered
// out of every text before n-gram generation.
class TextClassifier {
 public:
  // Throws DataError if the model is untrained or was fitted on another
  // vocabulary.
  TextClassifier(TextVectorizer vectorizer, MlrModel model, WordSet removals = {});

  EmotionLabel predict(std::string_view text) const;
  std::vector<double> predict_proba(std::string_view text) const;
  std::vector<EmotionLabel> predict_all(std::span<const std::string> texts) const;
  // As above, filtering `removals` instead of the bound list.
  std::vector<EmotionLabel> predict_all(std::span<const std::string> texts,
                                        const WordSet& removals) const;

  const TextVectorizer& vectorizer() const { return vectorizer_; }
  const MlrModel& model() const { return model_; }
  const WordSet& removals() const { return removals_; }
  void set_removals(WordSet removals) { removals_ = std::move(removals); }

 private:
  TextVectorizer vectorizer_;
  MlrModel model_;
  WordSet removals_;
};

}  // namespace vemo

#endif  // VEMO_CLASSIFIER_H_
