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


#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include <json.hpp>

#include "vemo/error.h"
#include "vemo/stopword_search.h"
#include "vemo/synthetic.h"

using namespace vemo;

namespace {

LabeledComment doc(std::string text, EmotionLabel label) {
  return {"", std::move(text), label};
}

// F1 as a fixed base plus a per-word effect for every filtered word.
class ScriptedEvaluator : public SearchEvaluator {
 public:
  explicit ScriptedEvaluator(std::map<std::string, double> effects) : effects_(std::move(effects)) {}
  double evaluate(const WordSet& filtered) override {
    ++calls;
    double f1 = 0.5;
    for (const auto& w : filtered) {
      auto it = effects_.find(w);
      if (it != effects_.end()) f1 += it->second;
    }
    return f1;
  }
  int calls = 0;

 private:
  std::map<std::string, double> effects_;
};

WordStats stats(std::string word, std::array<std::size_t, kNumEmotions> per_label) {
  WordStats s;
  s.word = std::move(word);
  s.per_label = per_label;
  for (auto n : per_label) s.total += n;
  return s;
}

}  // namespace

TEST_CASE("word statistics count tokens per label") {
  Corpus c = {doc("vui vui quá", EmotionLabel::kEnjoyment), doc("Quá buồn", EmotionLabel::kSadness)};
  auto s = word_statistics(c);
  REQUIRE(s.size() == 3);
  // sorted by total, then word
  CHECK(s[0].word == "quá");
  CHECK(s[0].total == 2);
  CHECK(s[0].per_label[0] == 1);
  CHECK(s[0].per_label[1] == 1);
  CHECK(s[1].word == "vui");
  CHECK(s[1].per_label[0] == 2);
  CHECK(s[2].word == "buồn");
  CHECK(word_statistics({}).empty());
}

TEST_CASE("candidate thresholds") {
  CandidateCriteria crit;  // total > 14, >= 5 in every present label
  std::vector<WordStats> s = {
      stats("fifteen", {5, 5, 5, 0, 0, 0, 0}),
      stats("fourteen", {5, 5, 4, 0, 0, 0, 0}),
      stats("skewed", {20, 5, 4, 0, 0, 0, 0}),
      stats("big", {30, 10, 10, 0, 0, 0, 0}),
  };
  CHECK(build_candidates(s, crit) == std::vector<std::string>{"big", "fifteen"});

  crit.per_label_mode = PerLabelMode::kAny;
  CHECK(build_candidates(s, crit) == std::vector<std::string>{"big", "skewed", "fifteen"});
}

TEST_CASE("labels absent from the corpus are ignored in all-mode") {
  std::vector<WordStats> s = {stats("x", {8, 8, 0, 0, 0, 0, 0})};
  CHECK(build_candidates(s, {}) == std::vector<std::string>{"x"});
  s.push_back(stats("y", {0, 0, 3, 0, 0, 0, 0}));  // makes Anger present
  CHECK(build_candidates(s, {}).empty());
}

TEST_CASE("POS exclusions need annotations") {
  std::vector<WordStats> s = {stats("thì", {9, 9, 0, 0, 0, 0, 0}), stats("nhà", {9, 9, 0, 0, 0, 0, 0})};
  PosAnnotations pos = {{"nhà", "noun"}, {"thì", "particle"}};
  CHECK(build_candidates(s, {}).size() == 2);
  CHECK(build_candidates(s, {}, &pos) == std::vector<std::string>{"thì"});
}

TEST_CASE("criteria strings") {
  auto c = CandidateCriteria::parse("min-total=20, min-per-label=3,per-label-mode=any");
  CHECK(c.min_total_count == 20);
  CHECK(c.min_per_label_count == 3);
  CHECK(c.per_label_mode == PerLabelMode::kAny);
  CHECK_THROWS_AS(CandidateCriteria::parse("min-total=0"), ConfigError);
  CHECK_THROWS_AS(CandidateCriteria::parse("min-total=x"), ConfigError);
  CHECK_THROWS_AS(CandidateCriteria::parse("colour=red"), ConfigError);
  CHECK_THROWS_AS(CandidateCriteria::parse("per-label-mode=some"), ConfigError);
}

TEST_CASE("one round sorts words by their effect") {
  ScriptedEvaluator ev({{"good", -0.05}, {"bad", 0.05}, {"flat", 0.0005}});
  SearchState st;
  st.test_list = {"good", "bad", "flat"};
  RoundReport r = ablation_round(st, ev, 0.1);
  CHECK(r.round == 1);
  REQUIRE(r.trials.size() == 3);
  CHECK(r.trials[0].verdict == Verdict::kKeep);
  CHECK(r.trials[1].verdict == Verdict::kRemove);
  CHECK(r.trials[2].verdict == Verdict::kNeutral);
  CHECK(r.trials[1].f1_delta == doctest::Approx(5.0));
  CHECK(st.final_filter_list == std::vector<std::string>{"bad"});
  CHECK(st.test_list == std::vector<std::string>{"flat"});
  CHECK(r.moved_to_final == 1);
  CHECK(r.dropped == 1);
  CHECK_FALSE(r.stagnant);
  CHECK(st.stagnant_rounds == 0);
}

TEST_CASE("an empty test list makes a stagnant round without evaluations") {
  ScriptedEvaluator ev({});
  SearchState st;
  st.final_filter_list = {"z"};
  RoundReport r = ablation_round(st, ev);
  CHECK(r.trials.empty());
  CHECK(r.stagnant);
  CHECK(st.stagnant_rounds == 1);
  CHECK(st.final_filter_list == std::vector<std::string>{"z"});
  CHECK(ev.calls == 0);
}

TEST_CASE("stagnation widens the co-filter") {
  // each alone is neutral, together they pass epsilon
  ScriptedEvaluator ev({{"p", 0.0008}, {"q", 0.0008}});
  SearchState st;
  st.test_list = {"p", "q"};
  RoundReport r1 = ablation_round(st, ev, 0.1);
  CHECK(r1.stagnant);
  CHECK(st.extra_filter_width == 1);
  RoundReport r2 = ablation_round(st, ev, 0.1);
  REQUIRE(r2.trials.size() == 2);
  CHECK(r2.trials[0].co_filtered == std::vector<std::string>{"q"});
  CHECK(r2.trials[1].co_filtered == std::vector<std::string>{"p"});
  CHECK(st.final_filter_list == std::vector<std::string>{"p", "q"});
  CHECK(st.stagnant_rounds == 0);
}

TEST_CASE("search stops after three stagnant rounds") {
  ScriptedEvaluator ev({{"a", 0.01}, {"b", -0.01}, {"c", 0.0}, {"d", 0.02}});
  SearchResult res = run_search({"a", "b", "c", "d", "a"}, ev, 0.1);
  CHECK(res.removal_list == std::vector<std::string>{"a", "d"});
  CHECK(res.stagnant_rounds == kMaxStagnantRounds);
  // round 1 moves two words, then three stagnant rounds with "c" left over
  CHECK(res.rounds.size() == 4);
  CHECK_FALSE(res.test_list_exhausted);
  CHECK(res.final_f1 == doctest::Approx(0.53));
  CHECK(res.initial_f1 == doctest::Approx(0.5));
}

TEST_CASE("state invariants over random scripts") {
  synth::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::string, double> effects;
    std::vector<std::string> words;
    std::size_t n = rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      std::string w = "w" + std::to_string(i);
      words.push_back(w);
      effects[w] = (rng.uniform() - 0.5) * 0.004;
    }
    ScriptedEvaluator ev(effects);
    SearchState st;
    st.test_list = words;
    std::size_t prev_test = st.test_list.size();
    std::size_t prev_final = 0;
    int stagnant = 0;
    while (st.stagnant_rounds < kMaxStagnantRounds) {
      RoundReport r = ablation_round(st, ev, 0.1);
      std::set<std::string> t(st.test_list.begin(), st.test_list.end());
      std::set<std::string> f(st.final_filter_list.begin(), st.final_filter_list.end());
      for (const auto& w : t) CHECK_FALSE(f.contains(w));
      CHECK(t.size() == st.test_list.size());
      CHECK(f.size() == st.final_filter_list.size());
      CHECK(st.test_list.size() <= prev_test);
      CHECK(st.final_filter_list.size() >= prev_final);
      CHECK(st.test_list.size() + r.moved_to_final + r.dropped == prev_test);
      stagnant = r.stagnant ? stagnant + 1 : 0;
      CHECK(st.stagnant_rounds == stagnant);
      prev_test = st.test_list.size();
      prev_final = st.final_filter_list.size();
      REQUIRE(st.round < 100);
    }
  }
}

TEST_CASE("audit records every trial") {
  ScriptedEvaluator ev({{"a", 0.01}, {"b", -0.01}});
  SearchResult res = run_search({"a", "b"}, ev, 0.1);
  std::string audit = audit_jsonl(res);
  std::size_t trials = 0;
  std::size_t empty_rounds = 0;
  for (const auto& r : res.rounds) {
    trials += r.trials.size();
    empty_rounds += r.trials.empty();
  }
  std::size_t lines = 0;
  std::size_t pos = 0;
  std::size_t seen_trials = 0;
  while (pos < audit.size()) {
    std::size_t nl = audit.find('\n', pos);
    REQUIRE(nl != std::string::npos);
    auto j = nlohmann::json::parse(audit.substr(pos, nl - pos));
    CHECK(j.contains("round"));
    if (!j["word"].is_null()) {
      ++seen_trials;
      CHECK(j.contains("verdict"));
      CHECK(j.contains("delta_points"));
    }
    ++lines;
    pos = nl + 1;
  }
  CHECK(seen_trials == trials);
  CHECK(lines == trials + empty_rounds);
}

TEST_CASE("dev-set evaluator finds the planted noise tokens") {
  auto sc = synth::stopword_corpus(11);
  DevSetEvaluator ev(sc.split.train, sc.split.dev, VectorizerConfig{Weighting::kTfidf, {1, 1}, 1000},
                     MlrConfig{4.5, ClassWeightMode::kBalanced});
  SearchResult res = run_search(sc.candidates(), ev);
  std::vector<std::string> got = res.removal_list;
  std::vector<std::string> want = sc.noise_tokens;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  CHECK(got == want);
  CHECK(res.final_f1 > res.initial_f1);
  CHECK(res.stagnant_rounds == kMaxStagnantRounds);
}

TEST_CASE("dev-set evaluator rejects an empty dev set") {
  auto sc = synth::stopword_corpus(3);
  CHECK_THROWS_AS(DevSetEvaluator(sc.split.train, Corpus{}, VectorizerConfig{}, MlrConfig{}), DataError);
}
