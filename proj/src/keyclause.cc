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

#include "vemo/keyclause.h"

#include <algorithm>
#include <map>
#include <set>

#include "vemo/lexicons.h"
#include "vemo/text.h"
#include "vemo/vectorizer.h"

namespace vemo {

namespace {

bool is_digit_cp(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

// Lowercase with leading and trailing non-word code points removed.
std::string match_key(std::string_view piece) {
  std::vector<char32_t> cps = decode_utf8(piece);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && !is_word_char(cps[b])) ++b;
  while (e > b && !is_word_char(cps[e - 1])) --e;
  return to_lower(encode_utf8(std::vector<char32_t>(cps.begin() + static_cast<std::ptrdiff_t>(b),
                                                    cps.begin() + static_cast<std::ptrdiff_t>(e))));
}

struct Segment {
  std::vector<std::string> words;
  std::string separator;  // empty for the final segment
};

// Breaks text into runs of whitespace tokens delimited by clause punctuation.
std::vector<Segment> segment(std::string_view text) {
  std::vector<Segment> segments(1);
  for (std::string_view token : split_whitespace(text)) {
    std::vector<char32_t> cps = decode_utf8(token);
    std::string piece;
    for (std::size_t i = 0; i < cps.size(); ++i) {
      char32_t cp = cps[i];
      bool sep = cp == U',' || cp == U'.' || cp == U';';
      if (sep && cp != U';' && i > 0 && i + 1 < cps.size() && is_digit_cp(cps[i - 1]) &&
          is_digit_cp(cps[i + 1]))
        sep = false;
      if (!sep) {
        append_utf8(piece, cp);
        continue;
      }
      if (!piece.empty()) segments.back().words.push_back(std::move(piece));
      piece.clear();
      segments.back().separator = std::string(1, static_cast<char>(cp));
      segments.emplace_back();
    }
    if (!piece.empty()) segments.back().words.push_back(std::move(piece));
  }
  return segments;
}

std::size_t token_count(std::string_view clause) { return split_whitespace(clause).size(); }

}  // namespace

// --- PhraseSet --------------------------------------------------------------

PhraseSet::PhraseSet(const std::vector<std::string>& entries) {
  std::set<std::string> seen;
  for (const auto& raw : entries) {
    std::vector<std::string> toks;
    std::string lowered = to_lower(raw);
    for (std::string_view t : split_whitespace(lowered)) toks.emplace_back(t);
    if (toks.empty()) continue;
    std::string joined = join(toks, " ");
    if (!seen.insert(joined).second) continue;
    entries_.push_back(std::move(joined));
    phrases_.push_back(std::move(toks));
  }
}

PhraseSet PhraseSet::load(const std::filesystem::path& path) {
  std::vector<std::string> entries;
  std::string content = read_file(path);
  for (std::size_t start = 0; start < content.size();) {
    std::size_t nl = content.find('\n', start);
    std::string_view line = trim(std::string_view(content).substr(
        start, nl == std::string::npos ? std::string_view::npos : nl - start));
    start = nl == std::string::npos ? content.size() : nl + 1;
    if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;
    entries.emplace_back(line);
  }
  return PhraseSet(entries);
}

std::size_t PhraseSet::match_at(const std::vector<std::string>& tokens, std::size_t pos) const {
  std::size_t best = 0;
  for (const auto& phrase : phrases_) {
    if (phrase.size() <= best || pos + phrase.size() > tokens.size()) continue;
    if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<std::ptrdiff_t>(pos)))
      best = phrase.size();
  }
  return best;
}

bool PhraseSet::occurs_in(const std::vector<std::string>& tokens) const {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (match_at(tokens, i) > 0) return true;
  return false;
}

// --- Clause splitting -------------------------------------------------------

ClauseSplit split_clauses(std::string_view text, const PhraseSet& conjunctions) {
  ClauseSplit out;
  out.original = std::string(text);
  std::vector<std::string> current;
  std::string pending;
  auto close = [&](std::string sep) {
    if (current.empty()) return;
    out.clauses.push_back(join(current, " "));
    current.clear();
    pending = std::move(sep);
  };
  auto append = [&](std::string word) {
    if (current.empty() && !out.clauses.empty()) out.separators.push_back(pending);
    current.push_back(std::move(word));
  };
  for (Segment& seg : segment(text)) {
    std::vector<std::string> keys;
    keys.reserve(seg.words.size());
    for (const auto& w : seg.words) keys.push_back(match_key(w));
    for (std::size_t j = 0; j < seg.words.size(); ++j) {
      if (!current.empty()) {
        if (std::size_t m = conjunctions.match_at(keys, j); m > 0) {
          std::vector<std::string> conj(keys.begin() + static_cast<std::ptrdiff_t>(j),
                                        keys.begin() + static_cast<std::ptrdiff_t>(j + m));
          close(join(conj, " "));
        }
      }
      append(std::move(seg.words[j]));
    }
    if (!seg.separator.empty()) close(seg.separator);
  }
  close({});

  // Merge short clauses until fixpoint.
  while (out.clauses.size() > 1) {
    auto it = std::find_if(out.clauses.begin(), out.clauses.end(),
                           [](const std::string& c) { return token_count(c) < kMinClauseTokens; });
    if (it == out.clauses.end()) break;
    auto i = static_cast<std::size_t>(it - out.clauses.begin());
    if (i > 0) {
      out.clauses[i - 1] += " " + out.clauses[i];
      out.clauses.erase(out.clauses.begin() + static_cast<std::ptrdiff_t>(i));
      out.separators.erase(out.separators.begin() + static_cast<std::ptrdiff_t>(i - 1));
    } else {
      out.clauses[1] = out.clauses[0] + " " + out.clauses[1];
      out.clauses.erase(out.clauses.begin());
      out.separators.erase(out.separators.begin());
    }
  }
  return out;
}

std::string extract_key_clause(std::string_view text, const PhraseSet& important,
                               const PhraseSet& conjunctions) {
  ClauseSplit split = split_clauses(text, conjunctions);
  if (split.clauses.empty()) return std::string(text);
  if (split.clauses.size() == 1) return split.clauses.front();
  for (std::size_t i = split.clauses.size(); i-- > 0;) {
    if (important.occurs_in(tokenize(split.clauses[i]))) return split.clauses[i];
  }
  return std::string(text);
}

EmotionLabel predict_with_keyclause(const TextClassifier& classifier, std::string_view text,
                                    const PhraseSet& important, const PhraseSet& conjunctions) {
  return classifier.predict(extract_key_clause(text, important, conjunctions));
}

// --- Mining -----------------------------------------------------------------

std::vector<MinedWord> mine_important_word_stats(const Corpus& dev,
                                                 const TextClassifier& classifier,
                                                 const PhraseSet& conjunctions,
                                                 const MiningOptions& options) {
  std::map<std::string, MinedWord> stats;
  std::size_t n_correct = 0;
  std::size_t n_incorrect = 0;
  for (const auto& comment : dev) {
    for (const auto& clause : split_clauses(comment.text, conjunctions).clauses) {
      bool correct = classifier.predict(clause) == comment.label;
      (correct ? n_correct : n_incorrect)++;
      Tokens toks = tokenize(clause);
      for (auto& gram : ngrams(toks, NgramRange{1, 2})) {
        MinedWord& w = stats[gram];
        if (w.phrase.empty()) w.phrase = gram;
        (correct ? w.correct_count : w.incorrect_count)++;
      }
    }
  }
  std::vector<MinedWord> out;
  if (n_correct == 0) return out;
  for (auto& [phrase, w] : stats) {
    if (w.correct_count < options.min_count) continue;
    double rate_correct = static_cast<double>(w.correct_count) / static_cast<double>(n_correct);
    double rate_incorrect =
        n_incorrect ? static_cast<double>(w.incorrect_count) / static_cast<double>(n_incorrect) : 0;
    if (rate_correct < options.lift * rate_incorrect) continue;
    out.push_back(w);
  }
  std::stable_sort(out.begin(), out.end(), [](const MinedWord& a, const MinedWord& b) {
    return a.correct_count > b.correct_count;
  });
  return out;
}

ImportantWordList mine_important_words(const Corpus& dev, const TextClassifier& classifier,
                                       const PhraseSet& conjunctions,
                                       const MiningOptions& options) {
  std::vector<std::string> entries;
  for (const auto& w : mine_important_word_stats(dev, classifier, conjunctions, options))
    entries.push_back(w.phrase);
  return {PhraseSet(entries), ImportantWordList::Source::kMined};
}

}  // namespace vemo
