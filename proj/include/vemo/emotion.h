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

#ifndef VEMO_EMOTION_H_
#define VEMO_EMOTION_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace vemo {

// The closed set of emotion labels. The enumerator order is the canonical
// label order used for confusion matrices and reports.
enum class EmotionLabel : int {
  kEnjoyment = 0,
  kSadness,
  kAnger,
  kFear,
  kDisgust,
  kSurprise,
  kOther,
};

inline constexpr std::size_t kNumEmotions = 7;

inline constexpr std::array<EmotionLabel, kNumEmotions> kAllEmotions = {
    EmotionLabel::kEnjoyment, EmotionLabel::kSadness, EmotionLabel::kAnger,
    EmotionLabel::kFear,      EmotionLabel::kDisgust, EmotionLabel::kSurprise,
    EmotionLabel::kOther,
};

// Canonical-cased name, e.g. "Enjoyment".
std::string_view label_name(EmotionLabel label);

// Case-insensitive parse. Surrounding ASCII whitespace is ignored.
// Throws DataError for anything outside the seven labels.
EmotionLabel parse_label(std::string_view text);

inline constexpr int label_index(EmotionLabel label) {
  return static_cast<int>(label);
}

}  // namespace vemo

#endif  // VEMO_EMOTION_H_
