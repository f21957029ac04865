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

#include "vemo/stopword_search.h"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "vemo/error.h"
#include "vemo/eval.h"
#include "vemo/lexicons.h"
#include "vemo/text.h"

namespace vemo {

std::vector<WordStats> word_statistics(const Corpus& corpus) {
  std::unordered_map<std::string, WordStats> table;
  for (const auto& c : corpus) {
    for (auto& tok : tokenize(c.text)) {
      WordStats& s = table[tok];
      if (s.word.empty()) s.word = tok;
      ++s.per_label[static_cast<std::size_t>(label_index(c.label))];
      ++s.total;
    }
  }
  std::vector<WordStats> out;
  out.reserve(table.size());
  for (auto& [w, s] : table) out.push_back(std::move(s));
  std::sort(out.begin(), out.end(), [](const WordStats& a, const WordStats& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.word < b.word;
  });
  return out;
}

PerLabelMode parse_per_label_mode(std::string_view name) {
  if (name == "all") return PerLabelMode::kAll;
  if (name == "any") return PerLabelMode::kAny;
  throw ConfigError("per-label mode must be 'all' or 'any', got '" + std::string(name) + "'");
}

CandidateCriteria CandidateCriteria::parse(std::string_view spec) {
  CandidateCriteria c;
  std::string items(spec);
  std::replace(items.begin(), items.end(), ',', ' ');
  for (std::string_view item : split_whitespace(items)) {
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("bad criteria item '" + std::string(item) + "'");
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    auto parse_size = [&](std::size_t& target) {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), target);
      if (ec != std::errc() || ptr != value.data() + value.size() || target == 0)
        throw ConfigError("criteria '" + std::string(key) + "' needs a positive integer");
    };
    if (key == "min-total") {
      parse_size(c.min_total_count);
    } else if (key == "min-per-label") {
      parse_size(c.min_per_label_count);
    } else if (key == "per-label-mode") {
      c.per_label_mode = parse_per_label_mode(value);
    } else {
      throw ConfigError("unknown criteria key '" + std::string(key) + "'");
    }
  }
  return c;
}

PosAnnotations load_pos_annotations(const std::filesystem::path& path) {
  PosAnnotations out;
  for (auto& [word, tag] : parse_lexicon_file(read_file(path), path.string()))
    out.emplace(to_lower(word), to_lower(tag));
  return out;
}

std::vector<std::string> build_candidates(const std::vector<WordStats>& stats,
                                          const CandidateCriteria& criteria,
                                          const PosAnnotations* pos) {
  std::array<bool, kNumEmotions> present{};
  for (const auto& s : stats)
    for (std::size_t c = 0; c < kNumEmotions; ++c)
      if (s.per_label[c] > 0) present[c] = true;

  std::vector<const WordStats*> chosen;
  for (const auto& s : stats) {
    if (s.total < criteria.min_total_count) continue;
    bool all = true;
    bool any = false;
    for (std::size_t c = 0; c < kNumEmotions; ++c) {
      if (!present[c]) continue;
      bool ok = s.per_label[c] >= criteria.min_per_label_count;
      all = all && ok;
      any = any || ok;
    }
    if (criteria.per_label_mode == PerLabelMode::kAll ? !all : !any) continue;
    if (pos) {
      auto it = pos->find(s.word);
      if (it != pos->end() && criteria.pos_exclusions.contains(it->second)) continue;
    }
    chosen.push_back(&s);
  }
  std::sort(chosen.begin(), chosen.end(), [](const WordStats* a, const WordStats* b) {
    if (a->total != b->total) return a->total > b->total;
    return a->word < b->word;
  });
  std::vector<std::string> out;
  for (const WordStats* s : chosen) out.push_back(s->word);
  return out;
}

// --- Evaluator --------------------------------------------------------------

namespace {

TextClassifier train_classifier(const Corpus& train, const VectorizerConfig& vcfg,
                                const MlrConfig& mcfg) {
  std::vector<std::string> texts = texts_of(train);
  TextVectorizer vectorizer = TextVectorizer::fit(texts, vcfg);
  FeatureMatrix m = vectorizer.transform(texts);
  std::vector<EmotionLabel> y = labels_of(train);
  MlrModel model = vemo::train(m, y, mcfg, vectorizer.vocabulary().fingerprint()).model;
  return TextClassifier(std::move(vectorizer), std::move(model));
}

}  // namespace

DevSetEvaluator::DevSetEvaluator(const Corpus& train, const Corpus& dev,
                                 const VectorizerConfig& vectorizer, const MlrConfig& mlr)
    : DevSetEvaluator(train_classifier(train, vectorizer, mlr), dev) {}

DevSetEvaluator::DevSetEvaluator(TextClassifier classifier, const Corpus& dev)
    : classifier_(std::move(classifier)) {
  if (dev.empty()) throw DataError("stopword search needs a non-empty development set");
  for (const auto& c : dev) {
    dev_tokens_.push_back(tokenize(c.text));
    dev_labels_.push_back(c.label);
  }
}

double DevSetEvaluator::evaluate(const WordSet& filtered) {
  std::vector<Tokens> docs;
  docs.reserve(dev_tokens_.size());
  for (const auto& t : dev_tokens_) docs.push_back(remove_features(t, filtered));
  const TextVectorizer& v = classifier_.vectorizer();
  FeatureMatrix m = v.config().weighting == Weighting::kCount
                        ? transform_count(docs, v.vocabulary(), v.config().ngram_range)
                        : transform_tfidf(docs, v.vocabulary(), v.config().ngram_range);
  std::vector<EmotionLabel> pred = predict_all(classifier_.model(), m);
  return vemo::evaluate(dev_labels_, pred).weighted_f1;
}


// --- Search -----------------------------------------------------------------

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kRemove:
      return "remove";
    case Verdict::kKeep:
      return "keep";
    case Verdict::kNeutral:
      break;
  }
  return "neutral";
}

RoundReport ablation_round(SearchState& state, SearchEvaluator& evaluator,
                           double epsilon_points) {
  ++state.round;
  RoundReport report;
  report.round = state.round;
  WordSet base(state.final_filter_list.begin(), state.final_filter_list.end());
  if (!state.test_list.empty()) report.baseline_f1 = evaluator.evaluate(base);

  for (const std::string& word : state.test_list) {
    AblationResult r;
    r.round = state.round;
    r.word = word;
    r.baseline_f1 = report.baseline_f1;
    WordSet filtered = base;
    filtered.insert(word);
    for (const std::string& other : state.test_list) {
      if (static_cast<int>(r.co_filtered.size()) >= state.extra_filter_width) break;
      if (other == word) continue;
      r.co_filtered.push_back(other);
      filtered.insert(other);
    }
    r.trial_f1 = evaluator.evaluate(filtered);
    r.f1_delta = (r.trial_f1 - r.baseline_f1) * 100.0;
    if (r.f1_delta < -epsilon_points) {
      r.verdict = Verdict::kKeep;
    } else if (r.f1_delta > epsilon_points) {
      r.verdict = Verdict::kRemove;
    } else {
      r.verdict = Verdict::kNeutral;
    }
    report.trials.push_back(std::move(r));
  }

  std::vector<std::string> remaining;
  for (const AblationResult& r : report.trials) {
    switch (r.verdict) {
      case Verdict::kRemove:
        state.final_filter_list.push_back(r.word);
        ++report.moved_to_final;
        break;
      case Verdict::kKeep:
        ++report.dropped;
        break;
      case Verdict::kNeutral:
        remaining.push_back(r.word);
        break;
    }
  }
  state.test_list = std::move(remaining);
  if (report.moved_to_final == 0) {
    report.stagnant = true;
    state.stagnant_rounds = std::min(state.stagnant_rounds + 1, kMaxStagnantRounds);
    ++state.extra_filter_width;
  } else {
    state.stagnant_rounds = 0;
  }
  return report;
}

SearchResult run_search(std::vector<std::string> candidates, SearchEvaluator& evaluator,
                        double epsilon_points) {
  SearchResult result;
  SearchState& state = result.final_state;
  WordSet seen;
  for (auto& c : candidates)
    if (seen.insert(c).second) state.test_list.push_back(std::move(c));
  result.initial_f1 = evaluator.evaluate({});
  while (state.stagnant_rounds < kMaxStagnantRounds)
    result.rounds.push_back(ablation_round(state, evaluator, epsilon_points));
  result.removal_list = state.final_filter_list;
  result.final_f1 = evaluator.evaluate(WordSet(result.removal_list.begin(), result.removal_list.end()));
  result.stagnant_rounds = state.stagnant_rounds;
  result.test_list_exhausted = state.test_list.empty();
  return result;
}

std::string audit_jsonl(const SearchResult& result) {
  std::string out;
  for (const RoundReport& round : result.rounds) {
    if (round.trials.empty()) {
      nlohmann::ordered_json j = {{"round", round.round},
                                  {"word", nullptr},
                                  {"note", "empty test list"},
                                  {"stagnant", round.stagnant}};
      out += j.dump() + "\n";
      continue;
    }
    for (const AblationResult& r : round.trials) {
      nlohmann::ordered_json j = {
          {"round", r.round},
          {"word", r.word},
          {"co_filtered", r.co_filtered},
          {"baseline_f1", r.baseline_f1},
          {"trial_f1", r.trial_f1},
          {"delta_points", r.f1_delta},
          {"verdict", verdict_name(r.verdict)},
      };
      out += j.dump() + "\n";
    }
  }
  return out;
}

}  // namespace vemo
