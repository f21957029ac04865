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

#include "vemo/classifier.h"

#include "vemo/error.h"

namespace vemo {

TextClassifier::TextClassifier(TextVectorizer vectorizer, MlrModel model, WordSet removals)
    : vectorizer_(std::move(vectorizer)), model_(std::move(model)), removals_(std::move(removals)) {
  if (model_.labels.empty()) throw DataError("classifier model is untrained");
  check_vocabulary(model_, vectorizer_.vocabulary());
}

EmotionLabel TextClassifier::predict(std::string_view text) const {
  return vemo::predict(model_, vectorizer_.transform_one(text, removals_));
}

std::vector<double> TextClassifier::predict_proba(std::string_view text) const {
  return vemo::predict_proba(model_, vectorizer_.transform_one(text, removals_));
}

std::vector<EmotionLabel> TextClassifier::predict_all(std::span<const std::string> texts) const {
  return vemo::predict_all(model_, vectorizer_.transform(texts, removals_));
}

std::vector<EmotionLabel> TextClassifier::predict_all(std::span<const std::string> texts,
                                                      const WordSet& removals) const {
  return vemo::predict_all(model_, vectorizer_.transform(texts, removals));
}

}  // namespace vemo
