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


// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.h"
#include "oracles.h"
#include "vemo/eval.h"
#include "vemo/keyclause.h"
#include "vemo/lexicons.h"
#include "vemo/mlr.h"
#include "vemo/normalizer.h"
#include "vemo/pipeline.h"
#include "vemo/stopword_search.h"
#include "vemo/synthetic.h"
#include "vemo/text.h"

using namespace vemo;
namespace fs = std::filesystem;

namespace {

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

std::shared_ptr<const LexiconSet> lexicons() {
  static const auto lex =
      std::make_shared<const LexiconSet>(load_lexicons(fs::path(VEMO_DATA_DIR) / "lexicons"));
  return lex;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

Outcome check(bool ok, std::string detail) {
  return {ok ? Status::kPass : Status::kFail, std::move(detail)};
}

// --- 1 ----------------------------------------------------------------------

Outcome normalizer_goldens() {
  Timer t;
  const LexiconSet& lex = *lexicons();
  struct Case {
    std::function<std::string(const std::string&)> fn;
    std::string in, want;
  };
  auto collapse = [](const std::string& s) { return collapse_runs(s); };
  auto demoji = [&](const std::string& s) { return demojize(s, lex, false); };
  auto translate = [&](const std::string& s) { return translate_wordforms(s, lex); };
  auto correct = [&](const std::string& s) { return correct_spelling(s, lex); };
  const std::vector<Case> cases = {
      {collapse, ":))))", ":)"},
      {collapse, "hahaa", "haha"},
      {collapse, "hicc", "hic"},
      {collapse, "luônnn", "luôn"},
      {collapse, "thích quáaaaa", "thích quáa"},
      {demoji, ":)", ":slightly_smiling_face:"},
      {translate, ":angry_face:", "tức giận"},
      {translate, ":crying_face:", "khóc"},
      {translate, ":broken_heart:", "đau lòng"},
      {correct, "cóa", "có"},
      {correct, "pk", "biết"},
  };
  std::size_t ok = 0;
  std::string first_bad;
  for (const auto& c : cases) {
    std::string got = c.fn(c.in);
    if (got == c.want) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = "; \"" + c.in + "\" gave \"" + got + "\"";
    }
  }
  double secs = t.seconds();
  return check(ok == cases.size() && secs < 1.0,
               std::to_string(ok) + "/" + std::to_string(cases.size()) + " exact, " +
                   fmt(secs) + "s" + first_bad);
}

// --- 2 ----------------------------------------------------------------------

Outcome collapse_idempotence() {
  synth::Rng rng(20260);
  std::size_t violations = 0;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    std::string s = i < n ? testing::random_unicode(rng) : testing::random_comment(rng);
    std::string once = collapse_runs(s);
    bool bad = collapse_runs(once) != once || !is_valid_utf8(once);
    auto cps = decode_utf8(once);
    for (std::size_t k = 1; k < cps.size(); ++k) bad = bad || cps[k] == cps[k - 1];
    violations += bad;
  }
  return check(violations == 0, std::to_string(2 * n) + " strings, " +
                                    std::to_string(violations) + " violations");
}

// --- 3 ----------------------------------------------------------------------

Outcome vectorizer_oracle() {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_diff = 0;
  auto run = [&](const std::vector<oracle::Doc>& docs, int lo, int hi, std::size_t cap) {
    for (bool tfidf : {false, true}) {
      auto cmp = oracle::compare_vectorizer(docs, lo, hi, cap, tfidf);
      ++cases;
      failures += !cmp.ok;
      max_diff = std::max(max_diff, cmp.max_abs_diff);
    }
  };
  auto corpora = oracle::small_corpora();
  for (const auto& docs : corpora) {
    run(docs, 1, 1, 1000000);
    run(docs, 1, 3, 1000000);
    run(docs, 2, 3, 3);
  }
  synth::Rng rng(4242);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<oracle::Doc> docs(1 + rng.below(5));
    for (auto& d : docs) {
      std::size_t len = rng.below(7);
      for (std::size_t k = 0; k < len; ++k) d.push_back(rng.pick(alphabet));
    }
    int lo = 1 + static_cast<int>(rng.below(3));
    int hi = lo + static_cast<int>(rng.below(static_cast<std::size_t>(4 - lo)));
    run(docs, lo, hi, 1 + rng.below(40));
  }
  return check(failures == 0, std::to_string(corpora.size()) + " enumerated corpora + 1000 random, " +
                                  std::to_string(cases) + " comparisons, " +
                                  std::to_string(failures) + " mismatches, max |diff| " +
                                  fmt(max_diff));
}

// --- 4 ----------------------------------------------------------------------

Outcome gradient_check() {
  synth::Rng rng(99);
  double worst = 0;
  double worst_loss = 0;
  for (int i = 0; i < 100; ++i) {
    auto in = oracle::random_instance(rng);
    auto g = oracle::check_gradient(in, 1e-6);
    worst = std::max(worst, g.max_rel_error);
    worst_loss = std::max(worst_loss, g.loss_diff);
  }
  return check(worst < 1e-5 && worst_loss < 1e-9,
               "100 instances, max relative error " + fmt(worst) + ", max loss diff " +
                   fmt(worst_loss));
}

// --- 5 ----------------------------------------------------------------------

double accuracy_of(const TextClassifier& clf, const Corpus& corpus) {
  auto pred = clf.predict_all(texts_of(corpus));
  return evaluate(labels_of(corpus), pred).accuracy;
}

Outcome mlr_convergence() {
  CorpusSplit s = synth::separable_corpus(20, 10, 5);
  VectorizerConfig vc{Weighting::kTfidf, {1, 1}, 1000};
  MlrConfig mc;
  mc.C = 4.5;
  mc.class_weight = ClassWeightMode::kBalanced;
  std::vector<std::string> dumps;
  double train_acc = 0, dev_acc = 0;
  int iterations = 0;
  bool converged = false;
  for (int run = 0; run < 3; ++run) {
    auto texts = texts_of(s.train);
    TextVectorizer vec = TextVectorizer::fit(texts, vc);
    MlrModel model = vemo::train(vec.transform(texts), labels_of(s.train), mc,
                                 vec.vocabulary().fingerprint())
                         .model;
    dumps.push_back(model_to_json(model).dump());
    iterations = model.training.iterations;
    converged = model.training.converged;
    TextClassifier clf(std::move(vec), std::move(model));
    train_acc = accuracy_of(clf, s.train);
    dev_acc = accuracy_of(clf, s.dev);
  }
  bool same = dumps[0] == dumps[1] && dumps[1] == dumps[2];
  return check(train_acc == 1.0 && dev_acc >= 0.95 && same,
               "train acc " + fmt(train_acc) + ", dev acc " + fmt(dev_acc) + ", " +
                   std::to_string(iterations) + " iterations" +
                   (converged ? "" : " (budget hit)") +
                   (same ? ", 3 runs bit-identical" : ", runs differ"));
}

// --- 6 ----------------------------------------------------------------------

double pipeline_f1(const CorpusSplit& s, const char* techniques) {
  TrainOptions opts;
  opts.techniques = TechniqueSet::parse(techniques);
  opts.vectorizer = {Weighting::kTfidf, {1, 3}, 25000};
  opts.classifier.C = 4.5;
  opts.classifier.class_weight = ClassWeightMode::kBalanced;
  ModelBundle b = train_bundle(s.train, opts, lexicons());
  LoadedModel m = instantiate(b, lexicons());
  Corpus test = m.normalizer.normalize_corpus(s.test);
  auto pred = m.classifier.predict_all(texts_of(test));
  return 100 * evaluate(labels_of(test), pred).weighted_f1;
}

Outcome emoji_pipeline() {
  Timer t;
  synth::EmojiCorpusOptions o;  // 700 comments, 30% emoji-only
  CorpusSplit s = synth::emoji_signal_corpus(o);
  double with_demojize = pipeline_f1(s, "1,3,5");
  double with_strip = pipeline_f1(s, "2");
  double secs = t.seconds();
  double margin = with_demojize - with_strip;
  return check(margin >= 5.0 && secs < 120,
               "F1 {1,3,5} " + fmt(with_demojize, 4) + " vs {2} " + fmt(with_strip, 4) +
                   ", margin " + fmt(margin, 3) + " points, " + fmt(secs) + "s");
}

// --- 7 ----------------------------------------------------------------------

Outcome stopword_oracle() {
  auto sc = synth::stopword_corpus(11);
  DevSetEvaluator ev(sc.split.train, sc.split.dev, {Weighting::kTfidf, {1, 1}, 1000},
                     {4.5, ClassWeightMode::kBalanced});
  auto candidates = sc.candidates();
  SearchResult res = run_search(candidates, ev);

  std::set<std::string> got(res.removal_list.begin(), res.removal_list.end());
  std::set<std::string> want(sc.noise_tokens.begin(), sc.noise_tokens.end());
  bool exact = got == want && res.removal_list.size() == want.size() && want.size() == 5 &&
               sc.correlated_tokens.size() == 5;

  bool stagnant_end = res.stagnant_rounds == kMaxStagnantRounds &&
                      res.rounds.size() >= static_cast<std::size_t>(kMaxStagnantRounds);
  for (std::size_t i = res.rounds.size() - std::min<std::size_t>(res.rounds.size(), 3);
       i < res.rounds.size(); ++i)
    stagnant_end = stagnant_end && res.rounds[i].stagnant;

  // one record per trial, one per empty round, every candidate tried in round 1
  std::string audit = audit_jsonl(res);
  std::size_t expected = 0;
  for (const auto& r : res.rounds) expected += std::max<std::size_t>(r.trials.size(), 1);
  std::size_t lines = static_cast<std::size_t>(std::count(audit.begin(), audit.end(), '\n'));
  bool complete = lines == expected && !res.rounds.empty() &&
                  res.rounds[0].trials.size() == candidates.size();
  for (const auto& line : [&] {
         std::vector<std::string> v;
         std::istringstream is(audit);
         for (std::string l; std::getline(is, l);) v.push_back(l);
         return v;
       }()) {
    try {
      auto j = nlohmann::json::parse(line);
      complete = complete && j.contains("round") && j.contains("word");
    } catch (const std::exception&) {
      complete = false;
    }
  }

  std::string list;
  for (const auto& w : res.removal_list) list += (list.empty() ? "" : " ") + w;
  return check(exact && stagnant_end && complete,
               "removed [" + list + "] in " + std::to_string(res.rounds.size()) + " rounds" +
                   (stagnant_end ? ", ended on 3 stagnant rounds" : ", bad termination") +
                   ", audit " + std::to_string(lines) + "/" + std::to_string(expected) +
                   " records" + (complete ? "" : " (incomplete)"));
}

// --- 8 ----------------------------------------------------------------------

Outcome keyclause_suite() {
  std::vector<std::string> problems;
  auto s = split_clauses("I cannot cook very well, but I make quite good fried egg",
                         PhraseSet({"but"}));
  if (s.clauses != std::vector<std::string>{"I cannot cook very well",
                                            "but I make quite good fried egg"})
    problems.push_back("english example");

  PhraseSet conj = PhraseSet::load(fs::path(VEMO_DATA_DIR) / "keyclause" / "conjunctions.txt");
  auto fuzz = synth::clause_fuzz_texts(1000, 808);
  fuzz.push_back("a b c, d e f g");
  fuzz.push_back("a, b, c, d, e, f, g");
  std::size_t short_clauses = 0;
  for (const auto& text : fuzz) {
    auto split = split_clauses(text, conj);
    if (split.clauses.size() < 2) continue;
    for (const auto& c : split.clauses) short_clauses += split_whitespace(c).size() < kMinClauseTokens;
  }
  if (short_clauses) problems.push_back(std::to_string(short_clauses) + " short clauses");

  CorpusSplit data = synth::emoji_signal_corpus({});
  auto texts = texts_of(data.train);
  TextVectorizer vec = TextVectorizer::fit(texts, {Weighting::kTfidf, {1, 3}, 25000});
  MlrModel model = vemo::train(vec.transform(texts), labels_of(data.train),
                               {4.5, ClassWeightMode::kBalanced}, vec.vocabulary().fingerprint())
                       .model;
  TextClassifier clf(std::move(vec), std::move(model));
  std::size_t differences = 0;
  std::set<EmotionLabel> labels_seen;
  for (const auto& text : synth::clause_fuzz_texts(100, 909)) {
    EmotionLabel plain = clf.predict(text);
    labels_seen.insert(plain);
    differences += predict_with_keyclause(clf, text, PhraseSet{}, conj) != plain;
  }
  if (differences) problems.push_back(std::to_string(differences) + " passthrough differences");

  std::string detail = "english example split, " + std::to_string(fuzz.size()) +
                       " fuzzed splits with 0 short clauses, 100 passthrough predictions (" +
                       std::to_string(labels_seen.size()) + " labels) with 0 differences";
  if (!problems.empty()) {
    detail = "problems:";
    for (const auto& p : problems) detail += " " + p + ";";
  }
  return check(problems.empty(), detail);
}

// --- 9 ----------------------------------------------------------------------

Outcome eval_identities() {
  synth::Rng rng(1234);
  double worst_acc = 0, worst_wf1 = 0, worst_oracle = 0;
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 1 + rng.below(300);
    std::size_t k = 1 + rng.below(kNumEmotions);
    std::vector<EmotionLabel> gold, pred;
    for (std::size_t j = 0; j < n; ++j) {
      gold.push_back(kAllEmotions[rng.below(k)]);
      pred.push_back(rng.chance(0.4) ? gold.back() : kAllEmotions[rng.below(k)]);
    }
    EvalReport r = evaluate(gold, pred);
    std::size_t trace = 0;
    for (std::size_t c = 0; c < kNumEmotions; ++c) trace += r.confusion[c][c];
    worst_acc = std::max(worst_acc, std::abs(r.accuracy - static_cast<double>(trace) / n));
    double wf1 = 0;
    for (std::size_t c = 0; c < kNumEmotions; ++c)
      wf1 += static_cast<double>(r.per_class[c].support) / static_cast<double>(n) * r.per_class[c].f1;
    worst_wf1 = std::max(worst_wf1, std::abs(r.weighted_f1 - wf1));
    auto naive = oracle::naive_metrics(gold, pred);
    worst_oracle = std::max({worst_oracle, std::abs(naive.accuracy - r.accuracy),
                             std::abs(naive.weighted_f1 - r.weighted_f1)});
  }
  return check(worst_acc <= 1e-12 && worst_wf1 <= 1e-12 && worst_oracle <= 1e-12,
               "1000 label vectors, max |acc - trace/N| " + fmt(worst_acc) +
                   ", max |wF1 - sum| " + fmt(worst_wf1) + ", max oracle diff " +
                   fmt(worst_oracle));
}

// --- 10 ---------------------------------------------------------------------

Outcome dataset_reference() {
  const char* env = std::getenv("VEMO_UITVSMEC_DIR");
  if (env == nullptr || *env == '\0')
    return {Status::kSkip, "set VEMO_UITVSMEC_DIR to a directory with train.csv, dev.csv, test.csv"};
  fs::path dir = fs::absolute(env);
  for (const char* f : {"train.csv", "dev.csv", "test.csv"})
    if (!fs::exists(dir / f)) return {Status::kSkip, (dir / f).string() + " not found"};

  fs::path out = fs::temp_directory_path() / "vemo-acceptance-dataset";
  auto run = [&](const char* conf) {
    PipelineConfig c = load_config(fs::path(VEMO_CONFIG_DIR) / conf);
    apply_overrides(c, {"data.train=" + (dir / "train.csv").string(),
                        "data.dev=" + (dir / "dev.csv").string(),
                        "data.test=" + (dir / "test.csv").string()});
    return 100 * run_experiment(c, out).report.weighted_f1;
  };
  double baseline = run("baseline.conf");
  double best = run("best.conf");
  bool near = std::abs(baseline - 55.57) <= 2.0;
  bool gain = best - baseline >= 4.0;
  return check(near && gain, "baseline F1 " + fmt(baseline, 4) + " (reference 55.57 +/- 2), " +
                                 "1,3,5,6 F1 " + fmt(best, 4) + ", gain " +
                                 fmt(best - baseline, 3) + " points (need >= 4)");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {1, "normalizer goldens", normalizer_goldens},
      {2, "collapse_runs idempotence", collapse_idempotence},
      {3, "vectorizer oracle equivalence", vectorizer_oracle},
      {4, "MLR gradient check", gradient_check},
      {5, "MLR convergence on separable data", mlr_convergence},
      {6, "emoji-signal pipeline", emoji_pipeline},
      {7, "stopword search oracle", stopword_oracle},
      {8, "key-clause suite", keyclause_suite},
      {9, "evaluation identities", eval_identities},
      {10, "UIT-VSMEC reference numbers", dataset_reference},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL" : "SKIP";
    failed += o.status == Status::kFail;
    std::cout << tag << " " << c.id << " " << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
