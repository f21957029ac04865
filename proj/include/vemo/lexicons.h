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

#ifndef VEMO_LEXICONS_H_
#define VEMO_LEXICONS_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vemo {

using StringMap = std::map<std::string, std::string, std::less<>>;

// The five dictionaries driving the normalizer and stopword filtering.
// Immutable after load_lexicons().
struct LexiconSet {
  StringMap emoticon_map;     // ":)"        -> ":slightly_smiling_face:"
  StringMap emoji_map;        // U+1F600    -> ":grinning_face:"
  StringMap translation_map;  // ":crying_face:" -> "khóc"
  StringMap correction_map;   // "pk"       -> "biết"
  std::set<std::string, std::less<>> removal_list;

  // `token` must already be lowercase.
  std::optional<std::string> lookup_correction(std::string_view token) const;
  std::optional<std::string> lookup_translation(std::string_view word_form) const;

  // Stable content hash, recorded in run manifests.
  std::string fingerprint() const;
};

enum class LexiconFile { kEmoticons, kEmojis, kTranslations, kCorrections };

struct LexiconLoadReport {
  std::size_t emoticons = 0;
  std::size_t emojis = 0;
  std::size_t translations = 0;
  std::size_t corrections = 0;
  std::size_t removals = 0;
  std::vector<std::string> warnings;  // one per missing file
};

inline constexpr std::string_view kEmoticonsFile = "emoticons.tsv";
inline constexpr std::string_view kEmojisFile = "emojis.tsv";
inline constexpr std::string_view kTranslationsFile = "translations.tsv";
inline constexpr std::string_view kCorrectionsFile = "corrections.tsv";
inline constexpr std::string_view kRemovalsFile = "removals.txt";

// Parses one two-column TSV dictionary ('#' comment lines and blank lines
// skipped). Throws DataError on a wrong column count or duplicate key.
StringMap parse_lexicon_file(std::string_view content, std::string_view source);
std::set<std::string, std::less<>> parse_word_list(std::string_view content);

// Shape checks: word forms are `:[a-z0-9_]+:`, translations are non-empty
// and free of word forms, correction keys are lowercase single tokens,
// correction values are fixed points of the correction map, and no string
// is both an emoticon and an emoji key.
void validate_lexicons(const LexiconSet& lex);

// Missing files yield empty dictionaries and a warning in `report`.
LexiconSet load_lexicons(const std::filesystem::path& dir,
                         LexiconLoadReport* report = nullptr);

}  // namespace vemo

#endif  // VEMO_LEXICONS_H_
