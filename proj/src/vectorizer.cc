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

#include "vemo/vectorizer.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "vemo/error.h"
#include "vemo/text.h"

namespace vemo {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

// Sparse row from per-index accumulated values.
SparseRow to_row(std::vector<std::pair<std::uint32_t, double>>& cells) {
  std::sort(cells.begin(), cells.end());
  SparseRow row;
  for (std::size_t i = 0; i < cells.size();) {
    std::uint32_t idx = cells[i].first;
    double sum = 0;
    for (; i < cells.size() && cells[i].first == idx; ++i) sum += cells[i].second;
    row.indices.push_back(idx);
    row.values.push_back(sum);
  }
  return row;
}

}  // namespace

std::string_view weighting_name(Weighting w) {
  return w == Weighting::kCount ? "count" : "tfidf";
}

Weighting parse_weighting(std::string_view name) {
  if (name == "count") return Weighting::kCount;
  if (name == "tfidf" || name == "tf-idf") return Weighting::kTfidf;
  throw ConfigError("unknown weighting '" + std::string(name) + "' (expected count or tfidf)");
}

NgramRange parse_ngram_range(std::string_view text) {
  std::string_view t = trim(text);
  std::size_t sep = t.find_first_of(":-,");
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ConfigError("bad n-gram range '" + std::string(text) + "'");
    return v;
  };
  NgramRange r;
  if (sep == std::string_view::npos) {
    r.lo = r.hi = parse_int(t);
  } else {
    r.lo = parse_int(t.substr(0, sep));
    r.hi = parse_int(t.substr(sep + 1));
  }
  return r;
}

std::string ngram_range_to_string(NgramRange r) {
  return std::to_string(r.lo) + ":" + std::to_string(r.hi);
}

void VectorizerConfig::validate() const {
  if (ngram_range.lo < 1 || ngram_range.hi > 3 || ngram_range.lo > ngram_range.hi)
    throw ConfigError("n-gram range must satisfy 1 <= lo <= hi <= 3, got " +
                      ngram_range_to_string(ngram_range));
  if (n_features == 0) throw ConfigError("n_features must be positive");
}

Tokens tokenize(std::string_view text) {
  Tokens tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    char32_t cp = next_code_point(text, pos);
    if (is_word_char(cp)) {
      current.append(text.substr(start, pos - start));
    } else if (!current.empty()) {
      tokens.push_back(to_lower(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(to_lower(current));
  return tokens;
}

std::vector<std::string> ngrams(std::span<const std::string> tokens, NgramRange range) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string gram;
    for (int n = 1; n <= range.hi && i + static_cast<std::size_t>(n) <= tokens.size(); ++n) {
      if (n > 1) gram += ' ';
      gram += tokens[i + static_cast<std::size_t>(n) - 1];
      if (n >= range.lo) out.push_back(gram);
    }
  }
  return out;
}

Tokens remove_features(const Tokens& tokens, const WordSet& removals) {
  if (removals.empty()) return tokens;
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!removals.contains(t)) out.push_back(t);
  return out;
}

// --- Vocabulary -------------------------------------------------------------

Vocabulary::Vocabulary(std::vector<Entry> entries, std::size_t n_docs)
    : entries_(std::move(entries)), n_docs_(n_docs) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].feature, i).second)
      throw DataError("duplicate vocabulary feature '" + entries_[i].feature + "'");
  }
}

std::int64_t Vocabulary::index_of(std::string_view feature) const {
  auto it = index_.find(std::string(feature));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::string Vocabulary::fingerprint() const { return hex64(fnv1a64(to_tsv())); }

std::string Vocabulary::to_tsv() const {
  std::string out = "#n_docs\t" + std::to_string(n_docs_) + "\nfeature\tindex\tdf\ttf_total\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    out += e.feature;
    out += '\t';
    out += std::to_string(i);
    out += '\t';
    out += std::to_string(e.df);
    out += '\t';
    out += std::to_string(e.tf_total);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::from_tsv(std::string_view tsv) {
  std::vector<Entry> entries;
  std::size_t n_docs = 0;
  bool have_n = false;
  std::size_t line_no = 0;
  for (std::size_t start = 0; start < tsv.size();) {
    std::size_t nl = tsv.find('\n', start);
    std::string_view line = tsv.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? tsv.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    for (std::size_t p = 0;;) {
      std::size_t tab = line.find('\t', p);
      cols.push_back(line.substr(p, tab == std::string_view::npos ? std::string_view::npos : tab - p));
      if (tab == std::string_view::npos) break;
      p = tab + 1;
    }
    if (cols[0] == "#n_docs" && cols.size() == 2) {
      n_docs = parse_u64(cols[1], "n_docs");
      have_n = true;
      continue;
    }
    if (cols[0] == "feature") continue;
    if (cols.size() != 4)
      throw DataError("vocabulary line " + std::to_string(line_no) + ": expected 4 columns");
    if (parse_u64(cols[1], "index") != entries.size())
      throw DataError("vocabulary line " + std::to_string(line_no) + ": indices must be dense and ordered");
    entries.push_back({std::string(cols[0]), parse_u64(cols[2], "df"), parse_u64(cols[3], "tf_total")});
  }
  if (!have_n) throw DataError("vocabulary is missing its #n_docs line");
  return Vocabulary(std::move(entries), n_docs);
}

bool Vocabulary::operator==(const Vocabulary& other) const {
  if (n_docs_ != other.n_docs_ || entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& a = entries_[i];
    const Entry& b = other.entries_[i];
    if (a.feature != b.feature || a.df != b.df || a.tf_total != b.tf_total) return false;
  }
  return true;
}

Vocabulary fit_vocabulary(std::span<const Tokens> docs, const VectorizerConfig& cfg) {
  cfg.validate();
  if (docs.empty()) throw DataError("cannot fit a vocabulary on an empty corpus");
  struct Stat {
    std::uint64_t tf = 0;
    std::uint64_t df = 0;
    std::size_t last_doc = SIZE_MAX;
  };
  std::unordered_map<std::string, Stat> stats;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (auto& g : ngrams(docs[d], cfg.ngram_range)) {
      Stat& s = stats[std::move(g)];
      ++s.tf;
      if (s.last_doc != d) {
        ++s.df;
        s.last_doc = d;
      }
    }
  }
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(stats.size());
  for (auto& [f, s] : stats) entries.push_back({f, s.df, s.tf});
  auto by_frequency = [](const Vocabulary::Entry& a, const Vocabulary::Entry& b) {
    if (a.tf_total != b.tf_total) return a.tf_total > b.tf_total;
    return a.feature < b.feature;
  };
  if (entries.size() > cfg.n_features) {
    auto cut = entries.begin() + static_cast<std::ptrdiff_t>(cfg.n_features);
    std::nth_element(entries.begin(), cut, entries.end(), by_frequency);
    entries.erase(cut, entries.end());
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.feature < b.feature; });
  return Vocabulary(std::move(entries), docs.size());
}

Vocabulary fit_vocabulary(std::span<const std::string> texts, const VectorizerConfig& cfg) {
  std::vector<Tokens> docs;
  docs.reserve(texts.size());
  for (const auto& t : texts) docs.push_back(tokenize(t));
  return fit_vocabulary(std::span<const Tokens>(docs), cfg);
}

// --- Transforms -------------------------------------------------------------

FeatureMatrix transform_count(std::span<const Tokens> docs, const Vocabulary& vocab,
                              NgramRange range) {
  FeatureMatrix m;
  m.n_features = vocab.size();
  m.weighting = Weighting::kCount;
  m.rows.reserve(docs.size());
  std::vector<std::pair<std::uint32_t, double>> cells;
  for (const Tokens& doc : docs) {
    cells.clear();
    for (const auto& g : ngrams(doc, range)) {
      std::int64_t idx = vocab.index_of(g);
      if (idx >= 0) cells.emplace_back(static_cast<std::uint32_t>(idx), 1.0);
    }
    m.rows.push_back(to_row(cells));
  }
  return m;
}

double smoothed_idf(std::size_t n_docs, std::uint64_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

FeatureMatrix transform_tfidf(std::span<const Tokens> docs, const Vocabulary& vocab,
                              NgramRange range) {
  FeatureMatrix m = transform_count(docs, vocab, range);
  m.weighting = Weighting::kTfidf;
  std::vector<double> idf(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) idf[i] = smoothed_idf(vocab.n_docs(), vocab.entry(i).df);
  for (SparseRow& row : m.rows) {
    double norm2 = 0;
    for (std::size_t k = 0; k < row.nnz(); ++k) {
      row.values[k] *= idf[row.indices[k]];
      norm2 += row.values[k] * row.values[k];
    }
    if (norm2 > 0) {
      double inv = 1.0 / std::sqrt(norm2);
      for (double& v : row.values) v *= inv;
    }
  }
  return m;
}

// --- TextVectorizer ---------------------------------------------------------

TextVectorizer::TextVectorizer(VectorizerConfig config, Vocabulary vocab)
    : config_(config), vocab_(std::move(vocab)) {
  config_.validate();
}

TextVectorizer TextVectorizer::fit(std::span<const std::string> texts,
                                   const VectorizerConfig& config) {
  return TextVectorizer(config, fit_vocabulary(texts, config));
}

FeatureMatrix TextVectorizer::transform(std::span<const std::string> texts,
                                        const WordSet& removals) const {
  std::vector<Tokens> docs;
  docs.reserve(texts.size());
  for (const auto& t : texts) docs.push_back(remove_features(tokenize(t), removals));
  return config_.weighting == Weighting::kCount
             ? transform_count(docs, vocab_, config_.ngram_range)
             : transform_tfidf(docs, vocab_, config_.ngram_range);
}

SparseRow TextVectorizer::transform_one(std::string_view text, const WordSet& removals) const {
  std::string s(text);
  return std::move(transform(std::span<const std::string>(&s, 1), removals).rows.front());
}

}  // namespace vemo
