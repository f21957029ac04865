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

#include "vemo/pipeline.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <system_error>

#include <json.hpp>

#include "vemo/error.h"
#include "vemo/keyclause.h"
#include "vemo/text.h"

namespace vemo {

namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view key, std::string_view value) {
  double v = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size())
    throw ConfigError("bad number for " + std::string(key) + ": '" + std::string(value) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size())
    throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(value) + "'");
  return v;
}

std::string_view unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

std::string quote(const std::string& v) {
  if (v.find_first_of(" \t#\"") == std::string::npos && !v.empty()) return v;
  if (v.find('"') != std::string::npos) throw ConfigError("value cannot contain '\"': " + v);
  return "\"" + v + "\"";
}

std::string file_hash(const std::filesystem::path& path) {
  return hex64(fnv1a64(read_file(path)));
}

}  // namespace

std::string_view eval_split_name(EvalSplit s) { return s == EvalSplit::kDev ? "dev" : "test"; }

// --- Config -----------------------------------------------------------------

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  std::string value(unquote(trim(raw)));
  std::string k(trim(key));
  if (k == "label") {
    label = value;
  } else if (k == "seed") {
    seed = parse_uint(k, value);
    classifier.seed = seed;
  } else if (k == "eval_split") {
    if (value == "dev") eval_split = EvalSplit::kDev;
    else if (value == "test") eval_split = EvalSplit::kTest;
    else throw ConfigError("eval_split must be dev or test, got '" + value + "'");
  } else if (k == "data.train") {
    train_path = value;
  } else if (k == "data.dev") {
    dev_path = value;
  } else if (k == "data.test") {
    test_path = value;
  } else if (k == "data.lexicons") {
    lexicons_path = value;
  } else if (k == "data.format") {
    try {
      format = parse_corpus_format(value);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else if (k == "data.text_column") {
    text_column = value;
  } else if (k == "data.label_column") {
    label_column = value;
  } else if (k == "normalizer.techniques") {
    techniques = TechniqueSet::parse(value);
  } else if (k == "vectorizer.weighting") {
    vectorizer.weighting = parse_weighting(value);
  } else if (k == "vectorizer.ngram") {
    vectorizer.ngram_range = parse_ngram_range(value);
  } else if (k == "vectorizer.n_features") {
    vectorizer.n_features = parse_uint(k, value);
  } else if (k == "classifier.C") {
    classifier.C = parse_double(k, value);
  } else if (k == "classifier.class_weight") {
    classifier.class_weight = parse_class_weight(value);
  } else if (k == "classifier.max_iterations") {
    classifier.max_iterations = static_cast<int>(parse_uint(k, value));
  } else if (k == "classifier.tolerance") {
    classifier.tolerance = parse_double(k, value);
  } else if (k == "removal.list") {
    removal_list = value;
  } else if (k == "keyclause.important") {
    important_words = value;
  } else if (k == "keyclause.conjunctions") {
    conjunctions = value;
  } else {
    throw ConfigError("unknown config key '" + k + "'");
  }
}

void PipelineConfig::validate() const {
  techniques.validate();
  vectorizer.validate();
  classifier.validate();
  if (train_path.empty()) throw ConfigError("data.train is required");
  if (eval_split == EvalSplit::kDev && dev_path.empty())
    throw ConfigError("eval_split = dev needs data.dev");
  if (eval_split == EvalSplit::kTest && test_path.empty())
    throw ConfigError("eval_split = test needs data.test");
  bool needs_lex = techniques.has(2) || techniques.has(3) || techniques.has(4) ||
                   techniques.has(5) || techniques.has(6) ||
                   (techniques.has(7) && !removal_list);
  if (needs_lex && lexicons_path.empty())
    throw ConfigError("techniques " + techniques.to_string() + " need data.lexicons");
  if (removal_list && !techniques.has(7))
    throw ConfigError("removal.list is set but technique 7 is not selected");
  if (important_words.has_value() != conjunctions.has_value())
    throw ConfigError("keyclause needs both important and conjunctions");
  if (important_words && *important_words == "mined" && dev_path.empty())
    throw ConfigError("keyclause.important = mined needs data.dev");
}

std::filesystem::path PipelineConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

bool PipelineConfig::operator==(const PipelineConfig& o) const {
  return label == o.label && seed == o.seed && eval_split == o.eval_split &&
         train_path == o.train_path && dev_path == o.dev_path && test_path == o.test_path &&
         lexicons_path == o.lexicons_path && format == o.format &&
         text_column == o.text_column && label_column == o.label_column &&
         techniques == o.techniques && vectorizer == o.vectorizer &&
         classifier == o.classifier && removal_list == o.removal_list &&
         important_words == o.important_words && conjunctions == o.conjunctions;
}

PipelineConfig parse_config(std::string_view text, std::string_view source) {
  PipelineConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where() + "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (!section.empty()) key = section + "." + key;
    try {
      cfg.set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    } catch (const std::exception& e) {
      throw ConfigError(where() + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

std::string serialize_config(const PipelineConfig& c) {
  std::string out;
  auto kv = [&](std::string_view k, const std::string& v) {
    out += std::string(k) + " = " + v + "\n";
  };
  kv("label", quote(c.label.empty() ? "run" : c.label));
  kv("seed", std::to_string(c.seed));
  kv("eval_split", std::string(eval_split_name(c.eval_split)));
  out += "\n[data]\n";
  kv("train", quote(c.train_path));
  if (!c.dev_path.empty()) kv("dev", quote(c.dev_path));
  if (!c.test_path.empty()) kv("test", quote(c.test_path));
  if (!c.lexicons_path.empty()) kv("lexicons", quote(c.lexicons_path));
  kv("format", c.format == CorpusFormat::kCsv ? "csv" : "tsv");
  kv("text_column", quote(c.text_column));
  kv("label_column", quote(c.label_column));
  out += "\n[normalizer]\n";
  kv("techniques", quote(c.techniques.to_string()));
  out += "\n[vectorizer]\n";
  kv("weighting", std::string(weighting_name(c.vectorizer.weighting)));
  kv("ngram", ngram_range_to_string(c.vectorizer.ngram_range));
  kv("n_features", std::to_string(c.vectorizer.n_features));
  out += "\n[classifier]\n";
  kv("C", format_double(c.classifier.C));
  kv("class_weight", std::string(class_weight_name(c.classifier.class_weight)));
  kv("max_iterations", std::to_string(c.classifier.max_iterations));
  kv("tolerance", format_double(c.classifier.tolerance));
  if (c.removal_list) {
    out += "\n[removal]\n";
    kv("list", quote(*c.removal_list));
  }
  if (c.important_words) {
    out += "\n[keyclause]\n";
    kv("important", quote(*c.important_words));
    kv("conjunctions", quote(*c.conjunctions));
  }
  return out;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  PipelineConfig cfg = parse_config(text, path.string());
  cfg.base_dir = path.parent_path();
  return cfg;
}

void apply_overrides(PipelineConfig& config, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    std::size_t eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be key=value: '" + o + "'");
    config.set(std::string_view(o).substr(0, eq), std::string_view(o).substr(eq + 1));
  }
  config.validate();
}

// --- Model bundle -----------------------------------------------------------

std::string bundle_to_json(const ModelBundle& b) {
  ordered_json j;
  j["format"] = "vemo-model";
  j["version"] = 1;
  j["techniques"] = b.techniques.to_string();
  j["lexicon_fingerprint"] = b.lexicon_fingerprint;
  const VectorizerConfig& vc = b.vectorizer.config();
  j["vectorizer"] = {{"weighting", weighting_name(vc.weighting)},
                     {"ngram", ngram_range_to_string(vc.ngram_range)},
                     {"n_features", vc.n_features}};
  j["vocabulary"] = b.vectorizer.vocabulary().to_tsv();
  j["removals"] = std::vector<std::string>(b.removals.begin(), b.removals.end());
  j["model"] = model_to_json(b.model);
  return j.dump(1) + "\n";
}

ModelBundle bundle_from_json(std::string_view text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format") != "vemo-model" || j.at("version") != 1)
      throw DataError("not a vemo model bundle (format/version)");
    ModelBundle b;
    b.techniques = TechniqueSet::parse(j.at("techniques").get<std::string>());
    b.lexicon_fingerprint = j.at("lexicon_fingerprint").get<std::string>();
    VectorizerConfig vc;
    vc.weighting = parse_weighting(j.at("vectorizer").at("weighting").get<std::string>());
    vc.ngram_range = parse_ngram_range(j.at("vectorizer").at("ngram").get<std::string>());
    vc.n_features = j.at("vectorizer").at("n_features").get<std::size_t>();
    b.vectorizer = TextVectorizer(vc, Vocabulary::from_tsv(j.at("vocabulary").get<std::string>()));
    for (const auto& w : j.at("removals")) b.removals.insert(w.get<std::string>());
    b.model = model_from_json(j.at("model"));
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model bundle: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed model bundle: ") + e.what());
  }
}

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
  write_file(path, bundle_to_json(bundle));
}

ModelBundle load_bundle(const std::filesystem::path& path) {
  return bundle_from_json(read_file(path));
}

LoadedModel instantiate(const ModelBundle& bundle, std::shared_ptr<const LexiconSet> lexicons) {
  if (lexicons && lexicons->fingerprint() != bundle.lexicon_fingerprint &&
      !bundle.lexicon_fingerprint.empty()) {
    throw DataError("lexicons differ from the ones the model was trained with (fingerprint " +
                    lexicons->fingerprint() + " vs " + bundle.lexicon_fingerprint + ")");
  }
  TechniqueSet norm_techniques;
  for (int id : bundle.techniques.ids())
    if (id != 7) norm_techniques.add(id);
  Normalizer normalizer(NormalizerConfig{norm_techniques, std::move(lexicons)});
  TextClassifier classifier(bundle.vectorizer, bundle.model, bundle.removals);
  return LoadedModel{std::move(normalizer), std::move(classifier)};
}

ModelBundle train_bundle(const Corpus& train, const TrainOptions& options,
                         std::shared_ptr<const LexiconSet> lexicons,
                         NormalizerDiagnostics* diag) {
  TechniqueSet norm_techniques;
  for (int id : options.techniques.ids())
    if (id != 7) norm_techniques.add(id);
  Normalizer normalizer(NormalizerConfig{norm_techniques, lexicons});
  Corpus normalized = normalizer.normalize_corpus(train, diag);
  std::vector<std::string> texts = texts_of(normalized);
  ModelBundle b;
  b.techniques = options.techniques;
  b.lexicon_fingerprint = lexicons ? lexicons->fingerprint() : "";
  b.vectorizer = TextVectorizer::fit(texts, options.vectorizer);
  b.removals = options.removals;
  FeatureMatrix m = b.vectorizer.transform(texts);  // training keeps the full vocabulary
  std::vector<EmotionLabel> y = labels_of(normalized);
  b.model = vemo::train(m, y, options.classifier, b.vectorizer.vocabulary().fingerprint()).model;
  return b;
}

// --- Runs -------------------------------------------------------------------

std::string run_id_for(const PipelineConfig& config) {
  std::string base;
  for (char ch : config.label) {
    auto u = static_cast<unsigned char>(ch);
    if (std::isalnum(u) || ch == '-' || ch == '_' || ch == '.') base += ch;
    else if (!base.empty() && base.back() != '-') base += '-';
  }
  while (!base.empty() && (base.back() == '-' || base.back() == '.')) base.pop_back();
  if (base.empty()) base = "run";
  return base + "-" + hex64(fnv1a64(serialize_config(config))).substr(0, 8);
}

RunResult run_experiment(const PipelineConfig& config, const std::filesystem::path& out_root) {
  config.validate();
  CorpusOptions copts;
  copts.format = config.format;
  copts.text_column = config.text_column;
  copts.label_column = config.label_column;

  CorpusSplit split;
  copts.id_prefix = "train-";
  split.train = load_corpus(config.resolve(config.train_path), copts);
  if (!config.dev_path.empty()) {
    copts.id_prefix = "dev-";
    split.dev = load_corpus(config.resolve(config.dev_path), copts);
  }
  if (!config.test_path.empty()) {
    copts.id_prefix = "test-";
    split.test = load_corpus(config.resolve(config.test_path), copts);
  }
  check_disjoint(split);

  std::shared_ptr<const LexiconSet> lexicons;
  if (!config.lexicons_path.empty())
    lexicons = std::make_shared<LexiconSet>(load_lexicons(config.resolve(config.lexicons_path)));

  TrainOptions topts;
  topts.techniques = config.techniques;
  topts.vectorizer = config.vectorizer;
  topts.classifier = config.classifier;
  topts.classifier.seed = config.seed;
  std::string removal_hash;
  if (config.techniques.has(7)) {
    if (config.removal_list) {
      std::string content = read_file(config.resolve(*config.removal_list));
      for (const auto& w : parse_word_list(content)) topts.removals.insert(w);
      removal_hash = hex64(fnv1a64(content));
    } else {
      for (const auto& w : lexicons->removal_list) topts.removals.insert(w);
    }
  }

  NormalizerDiagnostics diag;
  ModelBundle bundle = train_bundle(split.train, topts, lexicons, &diag);
  LoadedModel loaded = instantiate(bundle, lexicons);

  Corpus dev = loaded.normalizer.normalize_corpus(split.dev, &diag);
  Corpus test = loaded.normalizer.normalize_corpus(split.test, &diag);
  Corpus normalized_train = loaded.normalizer.normalize_corpus(split.train);
  const Corpus& eval_corpus = config.eval_split == EvalSplit::kDev ? dev : test;
  std::vector<std::string> eval_texts = texts_of(eval_corpus);

  std::vector<EmotionLabel> predicted;
  std::string important_source;
  if (config.important_words) {
    PhraseSet conj = PhraseSet::load(config.resolve(*config.conjunctions));
    PhraseSet important;
    if (*config.important_words == "mined") {
      important = mine_important_words(dev, loaded.classifier, conj, MiningOptions{}).words;
      important_source = "mined";
    } else {
      important = PhraseSet::load(config.resolve(*config.important_words));
      important_source = file_hash(config.resolve(*config.important_words));
    }
    for (const auto& t : eval_texts)
      predicted.push_back(predict_with_keyclause(loaded.classifier, t, important, conj));
  } else {
    predicted = loaded.classifier.predict_all(eval_texts);
  }
  EvalReport report = evaluate(labels_of(eval_corpus), predicted);

  RunResult result;
  result.run_id = run_id_for(config);
  result.directory = out_root / result.run_id;
  result.report = report;

  save_bundle(bundle, result.directory / "model.json");
  save_corpus(normalized_train, result.directory / "normalized" / "train.csv", copts);
  if (!split.dev.empty()) save_corpus(dev, result.directory / "normalized" / "dev.csv", copts);
  if (!split.test.empty()) save_corpus(test, result.directory / "normalized" / "test.csv", copts);

  ordered_json rj = report.to_json();
  rj["split"] = eval_split_name(config.eval_split);
  write_file(result.directory / "report.json", rj.dump(2) + "\n");
  write_file(result.directory / "report.txt", report.to_table());

  std::string config_text = serialize_config(config);
  ordered_json m;
  m["format"] = "vemo-run-manifest";
  m["version"] = 1;
  m["run_id"] = result.run_id;
  m["label"] = config.label;
  m["config"] = config_text;
  m["config_hash"] = hex64(fnv1a64(config_text));
  m["seed"] = config.seed;
  m["lexicon_fingerprint"] = lexicons ? lexicons->fingerprint() : "";
  ordered_json data;
  data["train"] = {{"path", config.train_path},
                   {"hash", file_hash(config.resolve(config.train_path))},
                   {"rows", split.train.size()}};
  if (!config.dev_path.empty())
    data["dev"] = {{"path", config.dev_path},
                   {"hash", file_hash(config.resolve(config.dev_path))},
                   {"rows", split.dev.size()}};
  if (!config.test_path.empty())
    data["test"] = {{"path", config.test_path},
                    {"hash", file_hash(config.resolve(config.test_path))},
                    {"rows", split.test.size()}};
  m["data"] = data;
  if (config.techniques.has(7)) {
    m["removal_list"] = {{"hash", removal_hash.empty() ? "lexicons" : removal_hash},
                         {"words", topts.removals.size()}};
  }
  if (config.important_words) m["important_words"] = important_source;
  m["vocabulary_fingerprint"] = bundle.vectorizer.vocabulary().fingerprint();
  m["vocabulary_size"] = bundle.vectorizer.vocabulary().size();
  m["training"] = {{"iterations", bundle.model.training.iterations},
                   {"converged", bundle.model.training.converged},
                   {"final_loss", bundle.model.training.final_loss}};
  m["normalizer"] = nlohmann::ordered_json::parse(diag.to_json());
  m["split"] = eval_split_name(config.eval_split);
  m["metrics"] = {{"n", report.n},
                  {"accuracy", report.accuracy},
                  {"weighted_f1", report.weighted_f1},
                  {"macro_f1", report.macro_f1}};
  result.manifest = m.dump(2) + "\n";
  write_file(result.directory / "manifest.json", result.manifest);
  return result;
}

std::string MatrixResult::to_table() const {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.label.size());
  auto pad = [&](std::string s) {
    s.resize(width, ' ');
    return s;
  };
  std::string out = pad("label") + "  accuracy  weighted_f1\n";
  char buf[64];
  for (const auto& r : rows) {
    if (r.ok) {
      std::snprintf(buf, sizeof buf, "  %8.2f  %11.2f", 100 * r.accuracy, 100 * r.weighted_f1);
      out += pad(r.label) + buf + "\n";
    } else {
      out += pad(r.label) + "  ERROR: " + r.error + "\n";
    }
  }
  return out;
}

std::string MatrixResult::to_json() const {
  ordered_json j = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["label"] = r.label;
    row["run_id"] = r.run_id;
    if (r.ok) {
      row["accuracy"] = r.accuracy;
      row["weighted_f1"] = r.weighted_f1;
    } else {
      row["error"] = r.error;
    }
    j.push_back(row);
  }
  return j.dump(2) + "\n";
}

MatrixResult run_matrix(const std::vector<PipelineConfig>& configs,
                        const std::filesystem::path& out_root) {
  if (configs.empty()) throw ConfigError("matrix needs at least one config");
  MatrixResult result;
  for (const auto& cfg : configs) {
    MatrixRow row;
    row.label = cfg.label;
    try {
      row.run_id = run_id_for(cfg);
      RunResult r = run_experiment(cfg, out_root);
      row.ok = true;
      row.accuracy = r.report.accuracy;
      row.weighted_f1 = r.report.weighted_f1;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const MatrixRow& a, const MatrixRow& b) { return a.label < b.label; });
  return result;
}

}  // namespace vemo
