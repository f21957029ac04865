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

#ifndef VEMO_KEYCLAUSE_H_
#define VEMO_KEYCLAUSE_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vemo/classifier.h"
#include "vemo/corpus_io.h"
#include "vemo/emotion.h"

namespace vemo {

// Lowercased, whitespace-normalized words or multi-word phrases
// ("nhưng", "tuy nhiên").
class PhraseSet {
 public:
  PhraseSet() = default;
  explicit PhraseSet(const std::vector<std::string>& entries);

  // One entry per line, '#' comments allowed.
  static PhraseSet load(const std::filesystem::path& path);

  bool empty() const { return phrases_.empty(); }
  std::size_t size() const { return phrases_.size(); }
  // Entries joined by single spaces, in insertion order.
  const std::vector<std::string>& entries() const { return entries_; }

  // Length in tokens of the longest phrase starting at tokens[pos], or 0.
  // `tokens` must be lowercase.
  std::size_t match_at(const std::vector<std::string>& tokens, std::size_t pos) const;
  bool occurs_in(const std::vector<std::string>& tokens) const;

 private:
  std::vector<std::string> entries_;
  std::vector<std::vector<std::string>> phrases_;
};

struct ImportantWordList {
  enum class Source { kFile, kMined };
  PhraseSet words;
  Source source = Source::kFile;
};

struct ClauseSplit {
  std::string original;
  std::vector<std::string> clauses;
  // separators[i] is the delimiter between clauses[i] and clauses[i + 1]:
  // ",", "." or ";" or the lowercased conjunction that opened the clause.
  std::vector<std::string> separators;
};

inline constexpr std::size_t kMinClauseTokens = 4;

// Splits at ',', '.' and ';' (not between two digits) and before any
// conjunction, which opens the following clause. Clauses shorter than four
// whitespace tokens are then merged into their left neighbour, or into the
// right one for the first clause, until every clause is long enough or only
// one remains.
ClauseSplit split_clauses(std::string_view text, const PhraseSet& conjunctions);

// The last clause containing an important word or phrase. A single-clause
// text yields that clause; when no clause qualifies the original text is
// returned unchanged.
std::string extract_key_clause(std::string_view text, const PhraseSet& important,
                               const PhraseSet& conjunctions);

// Classifies extract_key_clause(text); identical to classifier.predict(text)
// whenever extraction abstains.
EmotionLabel predict_with_keyclause(const TextClassifier& classifier, std::string_view text,
                                    const PhraseSet& important, const PhraseSet& conjunctions);

struct MiningOptions {
  std::size_t min_count = 5;
  // Required ratio of a candidate's per-clause rate in correctly classified
  // clauses to its rate in misclassified ones.
  double lift = 1.5;
};

struct MinedWord {
  std::string phrase;
  std::size_t correct_count = 0;
  std::size_t incorrect_count = 0;
};

// Splits every comment, classifies every clause and collects unigrams and
// bigrams from clauses whose prediction matches the comment's gold label.
// Sorted by correct_count descending, then phrase.
std::vector<MinedWord> mine_important_word_stats(const Corpus& dev,
                                                 const TextClassifier& classifier,
                                                 const PhraseSet& conjunctions,
                                                 const MiningOptions& options);
ImportantWordList mine_important_words(const Corpus& dev, const TextClassifier& classifier,
                                       const PhraseSet& conjunctions,
                                       const MiningOptions& options);

}  // namespace vemo

#endif  // VEMO_KEYCLAUSE_H_
