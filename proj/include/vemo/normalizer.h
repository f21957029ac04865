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

#ifndef VEMO_NORMALIZER_H_
#define VEMO_NORMALIZER_H_

#include <bitset>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vemo/corpus_io.h"
#include "vemo/lexicons.h"

namespace vemo {

// A set of preprocessing technique ids:
//   1 collapse repeated characters      2 remove emojis/emoticons
//   3 emojis/emoticons -> word forms    4 as 3, first occurrence only
//   5 translate word forms              6 spelling/acronym correction
//   7 removal-list filtering (applied at vectorization, not by Normalizer)
class TechniqueSet {
 public:
  TechniqueSet() = default;
  TechniqueSet(std::initializer_list<int> ids);

  // Accepts "1,3,5,6", "1+3+5+6", "" and "none". Throws ConfigError on ids
  // outside 1..7. Does not check cross-technique constraints.
  static TechniqueSet parse(std::string_view text);

  bool has(int id) const { return id >= 1 && id <= 7 && bits_[static_cast<std::size_t>(id)]; }
  void add(int id);
  bool empty() const { return bits_.none(); }
  // Ascending ids, which is also the application order.
  std::vector<int> ids() const;
  // "1,3,5,6", or "none" for the empty set.
  std::string to_string() const;

  // Throws ConfigError when 2/3/4 are combined or 5 lacks 3 or 4.
  void validate() const;

  bool operator==(const TechniqueSet&) const = default;

 private:
  std::bitset<8> bits_;
};

struct NormalizerDiagnostics {
  std::size_t texts = 0;
  std::size_t runs_collapsed = 0;
  std::size_t emotives_removed = 0;
  std::size_t emotives_transformed = 0;
  std::size_t duplicate_emotives_dropped = 0;
  std::size_t word_forms_translated = 0;
  std::size_t word_forms_unmapped = 0;
  std::size_t corrections_applied = 0;
  std::map<std::string, std::size_t> unmapped_word_forms;

  void merge(const NormalizerDiagnostics& other);
  std::string to_json() const;
};

// Longest-key-first matcher over the union of emoticon and emoji keys.
// A key whose first (last) code point is a letter or digit only matches when
// the preceding (following) code point is not one, so ":3" does not fire
// inside "10:30". Well-formed word forms already in the text are never
// matched against.
class EmotiveIndex {
 public:
  explicit EmotiveIndex(const LexiconSet& lex);

  struct Match {
    std::size_t length = 0;  // bytes consumed, including trailing modifiers
    const std::string* word_form = nullptr;
  };
  // Match at byte offset `pos` (which must be a code point boundary).
  Match match(std::string_view text, std::size_t pos) const;
  bool empty() const { return keys_.empty(); }

 private:
  std::unordered_map<std::string_view, const std::string*> keys_;
  std::vector<std::size_t> lengths_;  // distinct key lengths, descending
};

// Technique 1. Every maximal run of two or more identical code points
// becomes a single code point.
std::string collapse_runs(std::string_view text, std::size_t* collapsed = nullptr);

// Technique 2.
std::string strip_emotives(std::string_view text, const LexiconSet& lex);
std::string strip_emotives(std::string_view text, const EmotiveIndex& index,
                           NormalizerDiagnostics* diag = nullptr);

// Techniques 3 (dedup = false) and 4 (dedup = true).
std::string demojize(std::string_view text, const LexiconSet& lex, bool dedup);
std::string demojize(std::string_view text, const EmotiveIndex& index, bool dedup,
                     NormalizerDiagnostics* diag = nullptr);

// Technique 5. Unmapped word forms are left in place and counted.
std::string translate_wordforms(std::string_view text, const LexiconSet& lex,
                                NormalizerDiagnostics* diag = nullptr);

// Technique 6. Whitespace tokens are looked up lowercased; a token that
// misses is retried with leading/trailing punctuation peeled off, which is
// then reattached around the correction. Word forms are never corrected.
std::string correct_spelling(std::string_view text, const LexiconSet& lex,
                             NormalizerDiagnostics* diag = nullptr);

struct NormalizerConfig {
  TechniqueSet techniques;
  std::shared_ptr<const LexiconSet> lexicons;
};

// Applies the enabled techniques in ascending order. Construction validates
// the technique set and checks that the dictionaries it needs are present.
class Normalizer {
 public:
  explicit Normalizer(NormalizerConfig config);

  std::string normalize(std::string_view text,
                        NormalizerDiagnostics* diag = nullptr) const;
  // Texts are replaced, ids and labels kept, order preserved.
  Corpus normalize_corpus(const Corpus& corpus,
                          NormalizerDiagnostics* diag = nullptr) const;

  const NormalizerConfig& config() const { return config_; }

 private:
  NormalizerConfig config_;
  EmotiveIndex index_;
};

std::string normalize(std::string_view text, const NormalizerConfig& config);

}  // namespace vemo

#endif  // VEMO_NORMALIZER_H_
