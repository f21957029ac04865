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

#ifndef VEMO_VECTORIZER_H_
#define VEMO_VECTORIZER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vemo {

using Tokens = std::vector<std::string>;
using WordSet = std::set<std::string, std::less<>>;

enum class Weighting { kCount, kTfidf };

std::string_view weighting_name(Weighting w);
Weighting parse_weighting(std::string_view name);

struct NgramRange {
  int lo = 1;
  int hi = 3;
  bool operator==(const NgramRange&) const = default;
};

// "1:3" (also "1-3", "1,3").
NgramRange parse_ngram_range(std::string_view text);
std::string ngram_range_to_string(NgramRange r);

struct VectorizerConfig {
  Weighting weighting = Weighting::kTfidf;
  NgramRange ngram_range{1, 3};
  std::size_t n_features = 25000;

  // Throws ConfigError unless 1 <= lo <= hi <= 3 and n_features > 0.
  void validate() const;
  bool operator==(const VectorizerConfig&) const = default;
};

// Lowercased maximal runs of letters, digits, combining marks and '_'.
// Everything else (punctuation, emoji, symbols) separates tokens and is
// dropped. One-letter tokens are kept.
Tokens tokenize(std::string_view text);

// Contiguous n-grams for n in [lo, hi], joined by single spaces, ordered by
// (start position, n).
std::vector<std::string> ngrams(std::span<const std::string> tokens, NgramRange range);

// Technique 7: drops tokens in `removals` before n-gram generation.
Tokens remove_features(const Tokens& tokens, const WordSet& removals);

class Vocabulary {
 public:
  Vocabulary() = default;

  struct Entry {
    std::string feature;
    std::uint64_t df = 0;
    std::uint64_t tf_total = 0;
  };

  // Entries must be unique by feature; indices follow the given order.
  Vocabulary(std::vector<Entry> entries, std::size_t n_docs);

  std::size_t size() const { return entries_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  const Entry& entry(std::size_t index) const { return entries_[index]; }
  const std::vector<Entry>& entries() const { return entries_; }
  // Index of `feature`, or -1.
  std::int64_t index_of(std::string_view feature) const;

  // Binds a trained model to this exact vocabulary.
  std::string fingerprint() const;

  // TSV: a "#n_docs\t<N>" line, a "feature\tindex\tdf\ttf_total" header,
  // then one row per feature in index order.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::string_view tsv);

  bool operator==(const Vocabulary& other) const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_docs_ = 0;
};

// Counts every n-gram over the corpus, keeps the `n_features` with the
// largest total frequency (ties: lexicographically smaller feature first)
// and assigns indices in lexicographic feature order. Throws DataError on
// an empty corpus.
Vocabulary fit_vocabulary(std::span<const Tokens> docs, const VectorizerConfig& cfg);
Vocabulary fit_vocabulary(std::span<const std::string> texts, const VectorizerConfig& cfg);

struct SparseRow {
  std::vector<std::uint32_t> indices;  // strictly increasing
  std::vector<double> values;          // all > 0

  std::size_t nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  bool operator==(const SparseRow&) const = default;
};

struct FeatureMatrix {
  std::size_t n_features = 0;
  Weighting weighting = Weighting::kCount;
  std::vector<SparseRow> rows;

  std::size_t n_docs() const { return rows.size(); }
};

FeatureMatrix transform_count(std::span<const Tokens> docs, const Vocabulary& vocab,
                              NgramRange range);

// tf * idf with idf = ln((1 + N) / (1 + df)) + 1, N the fitting corpus size;
// each nonempty row is then L2-normalized.
FeatureMatrix transform_tfidf(std::span<const Tokens> docs, const Vocabulary& vocab,
                              NgramRange range);

double smoothed_idf(std::size_t n_docs, std::uint64_t df);

// Tokenizes, removes `removals` tokens, and applies the configured weighting.
class TextVectorizer {
 public:
  TextVectorizer() = default;
  TextVectorizer(VectorizerConfig config, Vocabulary vocab);

  static TextVectorizer fit(std::span<const std::string> texts, const VectorizerConfig& config);

  FeatureMatrix transform(std::span<const std::string> texts,
                          const WordSet& removals = {}) const;
  SparseRow transform_one(std::string_view text, const WordSet& removals = {}) const;

  const VectorizerConfig& config() const { return config_; }
  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  VectorizerConfig config_;
  Vocabulary vocab_;
};

}  // namespace vemo

#endif  // VEMO_VECTORIZER_H_
