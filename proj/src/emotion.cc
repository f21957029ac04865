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

#include "vemo/emotion.h"

#include <cctype>

#include "vemo/error.h"
#include "vemo/text.h"

namespace vemo {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kNames = {
    "Enjoyment", "Sadness", "Anger", "Fear", "Disgust", "Surprise", "Other",
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

}  // namespace

std::string_view label_name(EmotionLabel label) {
  return kNames[static_cast<std::size_t>(label)];
}

EmotionLabel parse_label(std::string_view text) {
  std::string_view trimmed = trim(text);
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (iequals(trimmed, kNames[i])) return kAllEmotions[i];
  }
  throw DataError("unknown emotion label '" + std::string(text) + "'");
}

}  // namespace vemo
