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

// vemo: normalize, train, evaluate and compare emotion classifiers for
// Vietnamese social-media comments.
//
//   vemo normalize --techniques 1,3,5,6 --lexicons data/lexicons --in c.csv --out n.csv
//   vemo train --train train.csv --techniques 1,3,5,6 --lexicons data/lexicons
//        --C 4.5 --class-weight balanced --out model.json
//   vemo run --config configs/best.conf
//   vemo matrix configs/count-*.conf

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vemo/corpus_io.h"
#include "vemo/error.h"
#include "vemo/eval.h"
#include "vemo/keyclause.h"
#include "vemo/lexicons.h"
#include "vemo/normalizer.h"
#include "vemo/pipeline.h"
#include "vemo/stopword_search.h"
#include "vemo/text.h"

namespace {

namespace fs = std::filesystem;
using namespace vemo;

struct CorpusFlags {
  std::string format = "csv";
  std::string text_col = "Sentence";
  std::string label_col = "Emotion";

  void add(CLI::App* app) {
    app->add_option("--format", format, "csv or tsv")->capture_default_str();
    app->add_option("--text-col", text_col, "text column name")->capture_default_str();
    app->add_option("--label-col", label_col, "label column name")->capture_default_str();
  }
  CorpusOptions options(std::string id_prefix = {}) const {
    CorpusOptions o;
    o.format = parse_corpus_format(format);
    o.text_column = text_col;
    o.label_column = label_col;
    o.id_prefix = std::move(id_prefix);
    return o;
  }
};

struct ModelFlags {
  std::string techniques;
  std::string lexicons;
  std::string weighting = "tfidf";
  std::string ngram = "1:3";
  std::size_t n_features = 25000;
  double C = 1.0;
  std::string class_weight = "uniform";
  int max_iter = 1000;
  double tol = 1e-6;

  void add(CLI::App* app, std::string default_techniques) {
    techniques = std::move(default_techniques);
    app->add_option("--techniques", techniques, "technique ids, e.g. 1,3,5,6")
        ->capture_default_str();
    app->add_option("--lexicons", lexicons, "lexicon directory");
    app->add_option("--weighting", weighting, "count or tfidf")->capture_default_str();
    app->add_option("--ngram", ngram, "n-gram range lo:hi")->capture_default_str();
    app->add_option("--n-features", n_features, "vocabulary cap")->capture_default_str();
    app->add_option("--C", C, "inverse regularization strength")->capture_default_str();
    app->add_option("--class-weight", class_weight, "uniform or balanced")
        ->capture_default_str();
    app->add_option("--max-iter", max_iter, "L-BFGS iteration budget")->capture_default_str();
    app->add_option("--tol", tol, "gradient infinity-norm tolerance")->capture_default_str();
  }
  TrainOptions options(std::uint64_t seed) const {
    TrainOptions t;
    t.techniques = TechniqueSet::parse(techniques);
    t.techniques.validate();
    t.vectorizer.weighting = parse_weighting(weighting);
    t.vectorizer.ngram_range = parse_ngram_range(ngram);
    t.vectorizer.n_features = n_features;
    t.vectorizer.validate();
    t.classifier.C = C;
    t.classifier.class_weight = parse_class_weight(class_weight);
    t.classifier.max_iterations = max_iter;
    t.classifier.tolerance = tol;
    t.classifier.seed = seed;
    t.classifier.validate();
    return t;
  }
};

std::shared_ptr<const LexiconSet> maybe_lexicons(const std::string& dir) {
  if (dir.empty()) return nullptr;
  LexiconLoadReport report;
  auto lex = std::make_shared<LexiconSet>(load_lexicons(dir, &report));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return lex;
}

WordSet read_word_set(const std::string& path) {
  WordSet out;
  for (const auto& w : parse_word_list(read_file(path))) out.insert(w);
  return out;
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emotion classification for Vietnamese social-media comments"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option_function<std::uint64_t>(
         "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; },
         "seed recorded with every model and run")
      ->configurable();

  // normalize
  CLI::App* norm = app.add_subcommand("normalize", "apply normalization techniques 1-6");
  CorpusFlags norm_corpus;
  norm_corpus.add(norm);
  std::string norm_techniques, norm_lexicons, norm_in, norm_out, norm_report;
  norm->add_option("--techniques", norm_techniques, "technique ids, e.g. 1,3,5,6")->required();
  norm->add_option("--lexicons", norm_lexicons, "lexicon directory");
  norm->add_option("--in", norm_in, "input corpus")->required();
  norm->add_option("--out", norm_out, "output corpus (default stdout)");
  norm->add_option("--report", norm_report, "diagnostics JSON (default stderr)");

  // train
  CLI::App* tr = app.add_subcommand("train", "train a model bundle");
  CorpusFlags tr_corpus;
  tr_corpus.add(tr);
  ModelFlags tr_model;
  tr_model.add(tr, "");
  std::string tr_train, tr_removals, tr_out;
  tr->add_option("--train", tr_train, "training corpus")->required();
  tr->add_option("--removals", tr_removals, "removal list applied at prediction (technique 7)");
  tr->add_option("--out", tr_out, "model file")->required();

  // predict
  CLI::App* pr = app.add_subcommand("predict", "label a corpus with a trained model");
  CorpusFlags pr_corpus;
  pr_corpus.add(pr);
  std::string pr_model, pr_lexicons, pr_in, pr_out;
  pr->add_option("--model", pr_model, "model file")->required();
  pr->add_option("--lexicons", pr_lexicons, "lexicon directory used at training time");
  pr->add_option("--in", pr_in, "input corpus")->required();
  pr->add_option("--out", pr_out, "output corpus with predicted labels (default stdout)");

  // evaluate
  CLI::App* ev = app.add_subcommand("evaluate", "score a model on a labeled corpus");
  CorpusFlags ev_corpus;
  ev_corpus.add(ev);
  std::string ev_model, ev_lexicons, ev_in, ev_report, ev_errors;
  std::size_t ev_top = 5;
  ev->add_option("--model", ev_model, "model file")->required();
  ev->add_option("--lexicons", ev_lexicons, "lexicon directory used at training time");
  ev->add_option("--in", ev_in, "labeled corpus")->required();
  ev->add_option("--report", ev_report, "JSON report path");
  ev->add_option("--errors", ev_errors, "misclassified comments with top features (JSON)");
  ev->add_option("--top-features", ev_top, "features listed per error")->capture_default_str();

  // discover-stopwords
  CLI::App* ds = app.add_subcommand("discover-stopwords", "ablation search for a removal list");
  CorpusFlags ds_corpus;
  ds_corpus.add(ds);
  ModelFlags ds_model;
  ds_model.add(ds, "1,3,5,6");
  std::string ds_train, ds_dev, ds_criteria = "min-total=15,min-per-label=5,per-label-mode=all";
  std::string ds_candidates, ds_pos, ds_out, ds_audit;
  double ds_epsilon = kDefaultEpsilonPoints;
  ds->add_option("--train", ds_train, "training corpus")->required();
  ds->add_option("--dev", ds_dev, "development corpus")->required();
  ds->add_option("--epsilon", ds_epsilon, "neutral band in F1 points")->capture_default_str();
  ds->add_option("--criteria", ds_criteria, "candidate frequency criteria")->capture_default_str();
  ds->add_option("--candidates", ds_candidates, "candidate words, one per line");
  ds->add_option("--pos", ds_pos, "word<TAB>POS annotations used to filter candidates");
  ds->add_option("--out", ds_out, "removal list output (default stdout)");
  ds->add_option("--audit", ds_audit, "JSON-lines audit log");

  // extract-clauses
  CLI::App* ec = app.add_subcommand("extract-clauses", "replace comments by their key clause");
  CorpusFlags ec_corpus;
  ec_corpus.add(ec);
  std::string ec_in, ec_important, ec_conj, ec_out;
  ec->add_option("--in", ec_in, "input corpus")->required();
  ec->add_option("--important", ec_important, "important words, one per line")->required();
  ec->add_option("--conjunctions", ec_conj, "conjunctions, one per line")->required();
  ec->add_option("--out", ec_out, "output corpus (default stdout)");

  // run
  CLI::App* rn = app.add_subcommand("run", "run one experiment from a config file");
  std::string rn_config, rn_out_root = "out";
  std::vector<std::string> rn_set;
  rn->add_option("--config", rn_config, "experiment config")->required();
  rn->add_option("--set", rn_set, "override, e.g. classifier.C=4.5 (repeatable)");
  rn->add_option("--out-root", rn_out_root, "output root")->capture_default_str();

  // matrix
  CLI::App* mx = app.add_subcommand("matrix", "run several configs and compare them");
  std::vector<std::string> mx_configs, mx_set;
  std::string mx_out_root = "out", mx_json;
  mx->add_option("configs", mx_configs, "experiment configs")->required();
  mx->add_option("--set", mx_set, "override applied to every config (repeatable)");
  mx->add_option("--out-root", mx_out_root, "output root")->capture_default_str();
  mx->add_option("--json", mx_json, "comparison table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*norm) {
      TechniqueSet t = TechniqueSet::parse(norm_techniques);
      if (t.has(7)) throw ConfigError("technique 7 applies at vectorization; use train --removals");
      Normalizer normalizer(NormalizerConfig{t, maybe_lexicons(norm_lexicons)});
      CorpusOptions o = norm_corpus.options();
      NormalizerDiagnostics diag;
      Corpus out = normalizer.normalize_corpus(load_corpus(norm_in, o), &diag);
      write_or_print(norm_out, serialize_corpus(out, o));
      if (norm_report.empty()) {
        std::cerr << diag.to_json() << "\n";
      } else {
        write_file(norm_report, diag.to_json() + "\n");
      }
    } else if (*tr) {
      TrainOptions opts = tr_model.options(seed);
      if (!tr_removals.empty()) {
        opts.removals = read_word_set(tr_removals);
        opts.techniques.add(7);
      }
      auto lex = maybe_lexicons(tr_model.lexicons);
      ModelBundle b = train_bundle(load_corpus(tr_train, tr_corpus.options("train-")), opts, lex);
      save_bundle(b, tr_out);
      std::cout << "trained " << b.model.labels.size() << " classes, "
                << b.vectorizer.vocabulary().size() << " features, "
                << b.model.training.iterations << " iterations"
                << (b.model.training.converged ? "" : " (not converged)") << " -> " << tr_out
                << "\n";
    } else if (*pr) {
      LoadedModel m = instantiate(load_bundle(pr_model), maybe_lexicons(pr_lexicons));
      CorpusOptions o = pr_corpus.options();
      Corpus corpus = m.normalizer.normalize_corpus(load_corpus(pr_in, o));
      Corpus raw = load_corpus(pr_in, o);
      std::vector<EmotionLabel> pred = m.classifier.predict_all(texts_of(corpus));
      for (std::size_t i = 0; i < raw.size(); ++i) raw[i].label = pred[i];
      write_or_print(pr_out, serialize_corpus(raw, o));
    } else if (*ev) {
      LoadedModel m = instantiate(load_bundle(ev_model), maybe_lexicons(ev_lexicons));
      Corpus corpus = m.normalizer.normalize_corpus(load_corpus(ev_in, ev_corpus.options()));
      std::vector<std::string> texts = texts_of(corpus);
      std::vector<EmotionLabel> pred = m.classifier.predict_all(texts);
      EvalReport report = evaluate(labels_of(corpus), pred);
      std::cout << report.to_table();
      if (!ev_report.empty()) write_file(ev_report, report.to_json().dump(2) + "\n");
      if (!ev_errors.empty()) {
        FeatureMatrix rows = m.classifier.vectorizer().transform(texts, m.classifier.removals());
        auto errors = error_report(corpus, pred, rows.rows, m.classifier.model(),
                                   m.classifier.vectorizer().vocabulary(), ev_top);
        write_file(ev_errors, error_report_to_json(errors).dump(2) + "\n");
      }
    } else if (*ds) {
      TrainOptions opts = ds_model.options(seed);
      auto lex = maybe_lexicons(ds_model.lexicons);
      TechniqueSet t;
      for (int id : opts.techniques.ids())
        if (id != 7) t.add(id);
      Normalizer normalizer(NormalizerConfig{t, lex});
      CorpusOptions o = ds_corpus.options();
      o.id_prefix = "train-";
      Corpus train = normalizer.normalize_corpus(load_corpus(ds_train, o));
      o.id_prefix = "dev-";
      Corpus dev = normalizer.normalize_corpus(load_corpus(ds_dev, o));
      std::vector<std::string> candidates;
      if (!ds_candidates.empty()) {
        for (const auto& w : parse_word_list(read_file(ds_candidates))) candidates.push_back(w);
      } else {
        CandidateCriteria criteria = CandidateCriteria::parse(ds_criteria);
        PosAnnotations pos;
        if (!ds_pos.empty()) pos = load_pos_annotations(ds_pos);
        candidates = build_candidates(word_statistics(train), criteria,
                                      ds_pos.empty() ? nullptr : &pos);
      }
      std::cerr << candidates.size() << " candidate words\n";
      DevSetEvaluator evaluator(train, dev, opts.vectorizer, opts.classifier);
      SearchResult result = run_search(candidates, evaluator, ds_epsilon);
      std::string list;
      for (const auto& w : result.removal_list) list += w + "\n";
      write_or_print(ds_out, list);
      if (!ds_audit.empty()) write_file(ds_audit, audit_jsonl(result));
      std::cerr << "dev weighted F1 " << 100 * result.initial_f1 << " -> "
                << 100 * result.final_f1 << " after " << result.rounds.size() << " rounds, "
                << result.removal_list.size() << " words removed\n";
    } else if (*ec) {
      PhraseSet important = PhraseSet::load(ec_important);
      PhraseSet conj = PhraseSet::load(ec_conj);
      CorpusOptions o = ec_corpus.options();
      Corpus corpus = load_corpus(ec_in, o);
      for (auto& c : corpus) c.text = extract_key_clause(c.text, important, conj);
      write_or_print(ec_out, serialize_corpus(corpus, o));
    } else if (*rn) {
      PipelineConfig cfg = load_config(rn_config);
      if (seed_given) rn_set.insert(rn_set.begin(), "seed=" + std::to_string(seed));
      apply_overrides(cfg, rn_set);
      RunResult r = run_experiment(cfg, rn_out_root);
      std::cout << r.report.to_table() << "run " << r.run_id << " -> " << r.directory.string()
                << "\n";
    } else if (*mx) {
      std::vector<PipelineConfig> configs;
      if (seed_given) mx_set.insert(mx_set.begin(), "seed=" + std::to_string(seed));
      for (const auto& path : mx_configs) {
        PipelineConfig cfg = load_config(path);
        apply_overrides(cfg, mx_set);
        configs.push_back(std::move(cfg));
      }
      MatrixResult result = run_matrix(configs, mx_out_root);
      std::cout << result.to_table();
      if (!mx_json.empty()) write_file(mx_json, result.to_json());
      bool any_ok = false;
      for (const auto& row : result.rows) any_ok = any_ok || row.ok;
      if (!any_ok) return 3;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
