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

#ifndef VEMO_PIPELINE_H_
#define VEMO_PIPELINE_H_

// Declarative experiment runs: one PipelineConfig per experiment row, a
// self-contained model bundle, and a runner that writes
// out/<run-id>/{model.json, normalized/, report.json, manifest.json}.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vemo/classifier.h"
#include "vemo/corpus_io.h"
#include "vemo/eval.h"
#include "vemo/lexicons.h"
#include "vemo/mlr.h"
#include "vemo/normalizer.h"
#include "vemo/vectorizer.h"

namespace vemo {

enum class EvalSplit { kDev, kTest };
std::string_view eval_split_name(EvalSplit s);

// Keyed text format:
//
//   label = best
//   seed = 0
//   eval_split = test
//   [data]        train, dev, test, lexicons, format, text_column, label_column
//   [normalizer]  techniques = 1,3,5,6
//   [vectorizer]  weighting, ngram, n_features
//   [classifier]  C, class_weight, max_iterations, tolerance
//   [removal]     list = <path>        (technique 7; defaults to lexicons/removals.txt)
//   [keyclause]   important = <path>|mined, conjunctions = <path>
//
// '#' starts a comment line; values may be double-quoted. Relative paths are
// resolved against `base_dir` (the config file's directory when loaded from
// disk).
struct PipelineConfig {
  std::string label;
  std::uint64_t seed = 0;
  EvalSplit eval_split = EvalSplit::kTest;

  std::string train_path;
  std::string dev_path;
  std::string test_path;
  std::string lexicons_path;
  CorpusFormat format = CorpusFormat::kCsv;
  std::string text_column = "Sentence";
  std::string label_column = "Emotion";

  TechniqueSet techniques;
  VectorizerConfig vectorizer;
  MlrConfig classifier;

  std::optional<std::string> removal_list;
  std::optional<std::string> important_words;  // "mined" mines them on dev
  std::optional<std::string> conjunctions;

  std::filesystem::path base_dir;  // not serialized

  // Sets one key; `key` is "section.name" or a top-level "name".
  void set(std::string_view key, std::string_view value);
  // Cross-field checks; throws ConfigError.
  void validate() const;
  std::filesystem::path resolve(const std::string& path) const;

  bool operator==(const PipelineConfig& o) const;
};

PipelineConfig parse_config(std::string_view text, std::string_view source = "<config>");
std::string serialize_config(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);
// Applies "key=value" overrides in order (flags win over the file).
void apply_overrides(PipelineConfig& config, const std::vector<std::string>& overrides);

// Everything needed to predict from raw text: techniques, lexicon
// fingerprint, vectorizer (config + vocabulary), removal list and model.
struct ModelBundle {
  TechniqueSet techniques;
  std::string lexicon_fingerprint;
  TextVectorizer vectorizer;
  WordSet removals;
  MlrModel model;
};

std::string bundle_to_json(const ModelBundle& bundle);
ModelBundle bundle_from_json(std::string_view text);
void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_bundle(const std::filesystem::path& path);

// Builds the normalizer and classifier of a bundle. `lexicons` may be null
// only when the techniques need none; a fingerprint mismatch is a DataError.
struct LoadedModel {
  Normalizer normalizer;
  TextClassifier classifier;
};
LoadedModel instantiate(const ModelBundle& bundle, std::shared_ptr<const LexiconSet> lexicons);

struct TrainOptions {
  TechniqueSet techniques;
  VectorizerConfig vectorizer;
  MlrConfig classifier;
  WordSet removals;  // stored in the bundle, used at prediction time
};

// Normalizes `train`, fits the vocabulary and trains the model.
ModelBundle train_bundle(const Corpus& train, const TrainOptions& options,
                         std::shared_ptr<const LexiconSet> lexicons,
                         NormalizerDiagnostics* diag = nullptr);

struct RunResult {
  std::string run_id;
  std::filesystem::path directory;
  EvalReport report;
  std::string manifest;  // manifest.json content
};

// Run ids are the sanitized label (or "run") plus the first 8 hex digits of
// the config hash.
std::string run_id_for(const PipelineConfig& config);

RunResult run_experiment(const PipelineConfig& config, const std::filesystem::path& out_root);

struct MatrixRow {
  std::string label;
  std::string run_id;
  bool ok = false;
  double accuracy = 0;
  double weighted_f1 = 0;
  std::string error;
};

struct MatrixResult {
  std::vector<MatrixRow> rows;  // sorted by label
  std::string to_table() const;
  std::string to_json() const;
};

// Runs each config; a failing run becomes an error row and the rest go on.
MatrixResult run_matrix(const std::vector<PipelineConfig>& configs,
                        const std::filesystem::path& out_root);

}  // namespace vemo

#endif  // VEMO_PIPELINE_H_
