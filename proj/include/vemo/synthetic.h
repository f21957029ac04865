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

#ifndef VEMO_SYNTHETIC_H_
#define VEMO_SYNTHETIC_H_

// Deterministic generators for small labeled corpora with a known structure.
// They back the demo data set, the test suites and the acceptance checks.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vemo/corpus_io.h"

namespace vemo::synth {

// Portable PRNG (splitmix64); identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::uint64_t state_;
};

// One disjoint vocabulary per emotion label; every document draws only from
// its label's vocabulary.
CorpusSplit separable_corpus(std::size_t docs_per_class, std::size_t dev_docs_per_class,
                             std::uint64_t seed);

// Emotive characters per label whose word forms the shipped lexicons map and
// translate; the generators below use exactly these.
const std::vector<std::string>& label_emotives(EmotionLabel label);

struct EmojiCorpusOptions {
  std::size_t n_comments = 700;
  double emoji_only_fraction = 0.3;  // emotion carried only by emojis/emoticons
  double misspelling_rate = 0.3;     // shipped correction-dictionary variants
  double elongation_rate = 0.2;      // "vuiii", ":)))"
  std::uint64_t seed = 7;
};

// Comments over all seven labels whose emotion is expressed through words,
// emojis or both. Splits are 70/15/15 in generation order.
CorpusSplit emoji_signal_corpus(const EmojiCorpusOptions& options);

struct StopwordCorpus {
  CorpusSplit split;
  std::vector<std::string> noise_tokens;       // spurious in train, uniform in dev
  std::vector<std::string> correlated_tokens;  // one per class, predictive everywhere
  std::vector<std::string> candidates() const;
};

// Five labels. Each noise token co-occurs with one label in the training
// split only and is spread uniformly over the development split; each
// correlated token marks its label in both.
StopwordCorpus stopword_corpus(std::uint64_t seed);

// Random comments with clause punctuation and conjunctions.
std::vector<std::string> clause_fuzz_texts(std::size_t n, std::uint64_t seed);

}  // namespace vemo::synth

#endif  // VEMO_SYNTHETIC_H_
