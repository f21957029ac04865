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

#ifndef VEMO_STOPWORD_SEARCH_H_
#define VEMO_STOPWORD_SEARCH_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vemo/classifier.h"
#include "vemo/corpus_io.h"
#include "vemo/emotion.h"
#include "vemo/mlr.h"
#include "vemo/vectorizer.h"

namespace vemo {

struct WordStats {
  std::string word;
  std::array<std::size_t, kNumEmotions> per_label{};
  std::size_t total = 0;
};

// Per-label token counts over a (normalized) corpus, sorted by total
// descending then word.
std::vector<WordStats> word_statistics(const Corpus& corpus);

enum class PerLabelMode { kAll, kAny };
PerLabelMode parse_per_label_mode(std::string_view name);

struct CandidateCriteria {
  std::size_t min_total_count = 15;  // "more than 14"
  std::size_t min_per_label_count = 5;
  // kAll: every label occurring in the corpus reaches min_per_label_count.
  // kAny: at least one label does.
  PerLabelMode per_label_mode = PerLabelMode::kAll;
  // POS categories to exclude; used only with annotations.
  std::set<std::string> pos_exclusions = {"noun", "noun_phrase", "verb", "adjective", "adverb"};

  // Parses "min-total=15,min-per-label=5,per-label-mode=all".
  static CandidateCriteria parse(std::string_view spec);
};

// word -> POS category, read from "word<TAB>category" lines.
using PosAnnotations = std::map<std::string, std::string, std::less<>>;
PosAnnotations load_pos_annotations(const std::filesystem::path& path);

std::vector<std::string> build_candidates(const std::vector<WordStats>& stats,
                                          const CandidateCriteria& criteria,
                                          const PosAnnotations* pos = nullptr);

// Scores a removal set: the weighted F1 (in [0, 1]) of one fixed classifier
// on the development set with `filtered` tokens removed at vectorization.
class SearchEvaluator {
 public:
  virtual ~SearchEvaluator() = default;
  virtual double evaluate(const WordSet& filtered) = 0;
};

// Trains a single classifier on the full-vocabulary training texts and
// evaluates filtered copies of the development texts.
class DevSetEvaluator : public SearchEvaluator {
 public:
  DevSetEvaluator(const Corpus& train, const Corpus& dev, const VectorizerConfig& vectorizer,
                  const MlrConfig& mlr);
  DevSetEvaluator(TextClassifier classifier, const Corpus& dev);

  double evaluate(const WordSet& filtered) override;
  const TextClassifier& classifier() const { return classifier_; }

 private:
  TextClassifier classifier_;
  std::vector<Tokens> dev_tokens_;
  std::vector<EmotionLabel> dev_labels_;
};

enum class Verdict { kRemove, kKeep, kNeutral };
std::string_view verdict_name(Verdict v);

struct SearchState {
  std::vector<std::string> test_list;
  std::vector<std::string> final_filter_list;
  int round = 0;
  int stagnant_rounds = 0;
  int extra_filter_width = 0;
};

struct AblationResult {
  int round = 0;
  std::string word;
  std::vector<std::string> co_filtered;  // extra test words filtered with `word`
  double baseline_f1 = 0;
  double trial_f1 = 0;
  double f1_delta = 0;  // (trial - baseline) in F1 points (x100)
  Verdict verdict = Verdict::kNeutral;
};

struct RoundReport {
  int round = 0;
  double baseline_f1 = 0;
  std::vector<AblationResult> trials;
  std::size_t moved_to_final = 0;
  std::size_t dropped = 0;
  bool stagnant = false;
};

inline constexpr double kDefaultEpsilonPoints = 0.1;
inline constexpr int kMaxStagnantRounds = 3;

// One pass over the test list. delta < -epsilon keeps the word (it leaves
// the test list), delta > +epsilon moves it to the final filter list, and
// anything in between leaves it in place. Verdicts are committed after all
// trials. A round that moves nothing is stagnant and widens the next
// round's co-filter by one word.
RoundReport ablation_round(SearchState& state, SearchEvaluator& evaluator,
                           double epsilon_points = kDefaultEpsilonPoints);

struct SearchResult {
  std::vector<std::string> removal_list;
  std::vector<RoundReport> rounds;
  SearchState final_state;
  double initial_f1 = 0;
  double final_f1 = 0;
  int stagnant_rounds = 0;  // kMaxStagnantRounds on return
  bool test_list_exhausted = false;
};

// Runs rounds until kMaxStagnantRounds consecutive stagnant rounds. An
// exhausted test list makes every further round stagnant, so the loop always
// ends through the stagnation counter.
SearchResult run_search(std::vector<std::string> candidates, SearchEvaluator& evaluator,
                        double epsilon_points = kDefaultEpsilonPoints);

// JSON lines, one record per trial.
std::string audit_jsonl(const SearchResult& result);

}  // namespace vemo

#endif  // VEMO_STOPWORD_SEARCH_H_
