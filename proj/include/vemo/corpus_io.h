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

#ifndef VEMO_CORPUS_IO_H_
#define VEMO_CORPUS_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vemo/emotion.h"

namespace vemo {

struct LabeledComment {
  std::string id;
  std::string text;  // raw, never normalized at load time
  EmotionLabel label = EmotionLabel::kOther;

  bool operator==(const LabeledComment&) const = default;
};

using Corpus = std::vector<LabeledComment>;

struct CorpusSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

enum class CorpusFormat { kCsv, kTsv };

CorpusFormat parse_corpus_format(std::string_view name);

struct CorpusOptions {
  CorpusFormat format = CorpusFormat::kCsv;
  std::string text_column = "Sentence";
  std::string label_column = "Emotion";
  // Used when present in the header; otherwise ids are synthesized as
  // `id_prefix` + 0-based data row index.
  std::string id_column = "id";
  std::string id_prefix;
};

// CSV is RFC 4180 (quoted fields may contain separators, quotes and
// newlines). TSV has no quoting. A UTF-8 byte-order mark is skipped. Throws
// DataError naming the line for unknown labels, empty text, wrong field
// counts and invalid UTF-8.
Corpus parse_corpus(std::string_view content, const CorpusOptions& options,
                    std::string_view source = "<memory>");
Corpus load_corpus(const std::filesystem::path& path,
                   const CorpusOptions& options = {});

// Writes a header (id, label, text columns) followed by one row per comment
// in input order. TSV output rejects text containing tabs or newlines.
std::string serialize_corpus(const Corpus& comments,
                             const CorpusOptions& options = {});
void save_corpus(const Corpus& comments, const std::filesystem::path& path,
                 const CorpusOptions& options = {});

// Loads three split files, synthesizing "train-", "dev-" and "test-" id
// prefixes when the files carry no id column, and checks that the splits
// are pairwise disjoint by id.
CorpusSplit load_splits(const std::filesystem::path& train,
                        const std::filesystem::path& dev,
                        const std::filesystem::path& test,
                        const CorpusOptions& options = {});
void check_disjoint(const CorpusSplit& split);

std::vector<EmotionLabel> labels_of(const Corpus& comments);
std::vector<std::string> texts_of(const Corpus& comments);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace vemo

#endif  // VEMO_CORPUS_IO_H_
