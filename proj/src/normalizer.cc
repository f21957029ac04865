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

#include "vemo/normalizer.h"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "vemo/error.h"
#include "vemo/text.h"

namespace vemo {

namespace {

// Code point immediately before byte offset `pos`, or 0 at the start.
char32_t previous_code_point(std::string_view text, std::size_t pos) {
  if (pos == 0) return 0;
  std::size_t start = pos - 1;
  while (start > 0 && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) --start;
  std::size_t p = start;
  return next_code_point(text, p);
}

char32_t code_point_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return 0;
  return next_code_point(text, pos);
}

char32_t last_code_point(std::string_view s) { return previous_code_point(s, s.size()); }

// Length of emoji presentation selectors and skin-tone modifiers at `pos`.
std::size_t modifier_length(std::string_view text, std::size_t pos) {
  std::size_t total = 0;
  while (pos + total < text.size()) {
    std::size_t p = pos + total;
    char32_t cp = next_code_point(text, p);
    if (cp == 0xFE0F || cp == 0xFE0E || (cp >= 0x1F3FB && cp <= 0x1F3FF)) {
      total = p - pos;
      continue;
    }
    break;
  }
  return total;
}

std::size_t code_point_length(std::string_view text, std::size_t pos) {
  std::size_t p = pos;
  next_code_point(text, p);
  return p - pos;
}

// Shared scan for techniques 2-4: `on_match` receives the matched word form
// and returns the replacement.
template <typename OnMatch>
std::string rewrite_emotives(std::string_view text, const EmotiveIndex& index,
                             OnMatch on_match) {
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t pos = 0;
  bool changed = false;
  while (pos < text.size()) {
    if (std::size_t wf = word_form_length(text, pos); wf > 0) {
      std::string_view form = text.substr(pos, wf);
      std::string replacement = on_match(form, /*existing=*/true);
      if (replacement != form) changed = true;
      out += replacement;
      pos += wf;
      continue;
    }
    EmotiveIndex::Match m = index.match(text, pos);
    if (m.length > 0) {
      out += on_match(*m.word_form, /*existing=*/false);
      pos += m.length;
      changed = true;
      continue;
    }
    std::size_t n = code_point_length(text, pos);
    out.append(text.substr(pos, n));
    pos += n;
  }
  if (!changed) return std::string(text);
  return collapse_whitespace(out);
}

std::string collapse_runs_outside_word_forms(std::string_view text, std::size_t* collapsed) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  std::size_t segment = 0;
  while (pos < text.size()) {
    if (std::size_t wf = word_form_length(text, pos); wf > 0) {
      out += collapse_runs(text.substr(segment, pos - segment), collapsed);
      out.append(text.substr(pos, wf));
      pos += wf;
      segment = pos;
      continue;
    }
    ++pos;
  }
  out += collapse_runs(text.substr(segment), collapsed);
  return out;
}

bool is_punct_code_point(char32_t cp) { return !is_word_char(cp) && cp != U' '; }

}  // namespace

// --- TechniqueSet ---------------------------------------------------------

TechniqueSet::TechniqueSet(std::initializer_list<int> ids) {
  for (int id : ids) add(id);
}

void TechniqueSet::add(int id) {
  if (id < 1 || id > 7)
    throw ConfigError("technique id " + std::to_string(id) + " is outside 1..7");
  bits_.set(static_cast<std::size_t>(id));
}

TechniqueSet TechniqueSet::parse(std::string_view text) {
  TechniqueSet set;
  std::string_view t = trim(text);
  if (t.empty() || t == "none" || t == "original") return set;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t sep = t.find_first_of(",+", pos);
    std::string_view item = trim(t.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos));
    if (item.size() != 1 || item[0] < '0' || item[0] > '9')
      throw ConfigError("bad technique list '" + std::string(text) + "'");
    set.add(item[0] - '0');
    if (sep == std::string_view::npos) break;
    pos = sep + 1;
  }
  return set;
}

std::vector<int> TechniqueSet::ids() const {
  std::vector<int> out;
  for (int i = 1; i <= 7; ++i)
    if (has(i)) out.push_back(i);
  return out;
}

std::string TechniqueSet::to_string() const {
  if (empty()) return "none";
  std::string out;
  for (int id : ids()) {
    if (!out.empty()) out += ',';
    out += static_cast<char>('0' + id);
  }
  return out;
}

void TechniqueSet::validate() const {
  int emotive = int(has(2)) + int(has(3)) + int(has(4));
  if (emotive > 1)
    throw ConfigError("techniques 2, 3 and 4 are mutually exclusive (got " + to_string() + ")");
  if (has(5) && !has(3) && !has(4))
    throw ConfigError("technique 5 requires technique 3 or 4 (got " + to_string() + ")");
}

// --- Diagnostics ------------------------------------------------------------

void NormalizerDiagnostics::merge(const NormalizerDiagnostics& o) {
  texts += o.texts;
  runs_collapsed += o.runs_collapsed;
  emotives_removed += o.emotives_removed;
  emotives_transformed += o.emotives_transformed;
  duplicate_emotives_dropped += o.duplicate_emotives_dropped;
  word_forms_translated += o.word_forms_translated;
  word_forms_unmapped += o.word_forms_unmapped;
  corrections_applied += o.corrections_applied;
  for (const auto& [k, v] : o.unmapped_word_forms) unmapped_word_forms[k] += v;
}

std::string NormalizerDiagnostics::to_json() const {
  nlohmann::ordered_json j;
  j["texts"] = texts;
  j["runs_collapsed"] = runs_collapsed;
  j["emotives_removed"] = emotives_removed;
  j["emotives_transformed"] = emotives_transformed;
  j["duplicate_emotives_dropped"] = duplicate_emotives_dropped;
  j["word_forms_translated"] = word_forms_translated;
  j["word_forms_unmapped"] = word_forms_unmapped;
  j["corrections_applied"] = corrections_applied;
  j["unmapped_word_forms"] = unmapped_word_forms;
  return j.dump(2);
}

// --- EmotiveIndex -----------------------------------------------------------

EmotiveIndex::EmotiveIndex(const LexiconSet& lex) {
  std::set<std::size_t, std::greater<>> lengths;
  for (const StringMap* m : {&lex.emoticon_map, &lex.emoji_map}) {
    for (const auto& [key, form] : *m) {
      keys_.emplace(std::string_view(key), &form);
      lengths.insert(key.size());
    }
  }
  lengths_.assign(lengths.begin(), lengths.end());
}

EmotiveIndex::Match EmotiveIndex::match(std::string_view text, std::size_t pos) const {
  for (std::size_t len : lengths_) {
    if (pos + len > text.size()) continue;
    std::string_view candidate = text.substr(pos, len);
    auto it = keys_.find(candidate);
    if (it == keys_.end()) continue;
    if (is_alnum(code_point_at(candidate, 0)) && is_alnum(previous_code_point(text, pos)))
      continue;
    if (is_alnum(last_code_point(candidate)) && is_alnum(code_point_at(text, pos + len)))
      continue;
    return Match{len + modifier_length(text, pos + len), it->second};
  }
  return {};
}

// --- Techniques -------------------------------------------------------------

std::string collapse_runs(std::string_view text, std::size_t* collapsed) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  char32_t prev = 0;
  bool have_prev = false;
  while (pos < text.size()) {
    std::size_t start = pos;
    char32_t cp = next_code_point(text, pos);
    if (have_prev && cp == prev) {
      if (collapsed) ++*collapsed;
      continue;
    }
    out.append(text.substr(start, pos - start));
    prev = cp;
    have_prev = true;
  }
  return out;
}

std::string strip_emotives(std::string_view text, const LexiconSet& lex) {
  return strip_emotives(text, EmotiveIndex(lex));
}

std::string strip_emotives(std::string_view text, const EmotiveIndex& index,
                           NormalizerDiagnostics* diag) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  bool changed = false;
  while (pos < text.size()) {
    if (std::size_t wf = word_form_length(text, pos); wf > 0) {
      out.append(text.substr(pos, wf));
      pos += wf;
      continue;
    }
    EmotiveIndex::Match m = index.match(text, pos);
    if (m.length > 0) {
      pos += m.length;
      changed = true;
      if (diag) ++diag->emotives_removed;
      continue;
    }
    std::size_t n = code_point_length(text, pos);
    out.append(text.substr(pos, n));
    pos += n;
  }
  if (!changed) return std::string(text);
  return collapse_whitespace(out);
}

std::string demojize(std::string_view text, const LexiconSet& lex, bool dedup) {
  return demojize(text, EmotiveIndex(lex), dedup);
}

std::string demojize(std::string_view text, const EmotiveIndex& index, bool dedup,
                     NormalizerDiagnostics* diag) {
  std::set<std::string, std::less<>> seen;
  return rewrite_emotives(text, index, [&](std::string_view form, bool existing) -> std::string {
    if (!existing && diag) ++diag->emotives_transformed;
    if (dedup) {
      if (!seen.emplace(form).second) {
        if (diag) ++diag->duplicate_emotives_dropped;
        return " ";
      }
    }
    return " " + std::string(form) + " ";
  });
}

std::string translate_wordforms(std::string_view text, const LexiconSet& lex,
                                NormalizerDiagnostics* diag) {
  std::string out;
  out.reserve(text.size());
  bool changed = false;
  std::size_t pos = 0;
  std::size_t copied = 0;
  while (pos < text.size()) {
    std::size_t wf = word_form_length(text, pos);
    if (wf == 0) {
      ++pos;
      continue;
    }
    std::string_view form = text.substr(pos, wf);
    auto it = lex.translation_map.find(form);
    if (it == lex.translation_map.end()) {
      if (diag) {
        ++diag->word_forms_unmapped;
        ++diag->unmapped_word_forms[std::string(form)];
      }
      pos += wf;
      continue;
    }
    out.append(text.substr(copied, pos - copied));
    out += ' ';
    out += it->second;
    out += ' ';
    pos += wf;
    copied = pos;
    changed = true;
    if (diag) ++diag->word_forms_translated;
  }
  if (!changed) return std::string(text);
  out.append(text.substr(copied));
  return collapse_whitespace(out);
}

std::string correct_spelling(std::string_view text, const LexiconSet& lex,
                             NormalizerDiagnostics* diag) {
  std::vector<std::string> tokens;
  for (std::string_view token : split_whitespace(text)) {
    if (is_word_form(token)) {
      tokens.emplace_back(token);
      continue;
    }
    if (auto hit = lex.lookup_correction(to_lower(token))) {
      tokens.push_back(std::move(*hit));
      if (diag) ++diag->corrections_applied;
      continue;
    }
    // Peel punctuation: "bjt," -> "biết,".
    std::size_t b = 0;
    std::size_t e = token.size();
    while (b < e) {
      std::size_t p = b;
      if (!is_punct_code_point(next_code_point(token, p))) break;
      b = p;
    }
    while (e > b) {
      std::size_t s = e - 1;
      while (s > b && (static_cast<unsigned char>(token[s]) & 0xC0) == 0x80) --s;
      std::size_t p = s;
      if (!is_punct_code_point(next_code_point(token, p))) break;
      e = s;
    }
    if (b < e && (b > 0 || e < token.size())) {
      if (auto hit = lex.lookup_correction(to_lower(token.substr(b, e - b)))) {
        tokens.push_back(std::string(token.substr(0, b)) + *hit + std::string(token.substr(e)));
        if (diag) ++diag->corrections_applied;
        continue;
      }
    }
    tokens.emplace_back(token);
  }
  return join(tokens, " ");
}

// --- Normalizer -------------------------------------------------------------

namespace {

// The index keeps views into the lexicon set, so it must outlive it.
const LexiconSet& empty_lexicons() {
  static const LexiconSet empty;
  return empty;
}

}  // namespace

Normalizer::Normalizer(NormalizerConfig config)
    : config_(std::move(config)),
      index_(config_.lexicons ? *config_.lexicons : empty_lexicons()) {
  const TechniqueSet& t = config_.techniques;
  t.validate();
  bool needs_lex = t.has(2) || t.has(3) || t.has(4) || t.has(5) || t.has(6);
  if (needs_lex && !config_.lexicons)
    throw ConfigError("techniques " + t.to_string() + " need lexicons");
  if ((t.has(3) || t.has(4)) && config_.lexicons->emoticon_map.empty())
    throw ConfigError("techniques 3/4 need a non-empty emoticon dictionary");
  if (t.has(5) && config_.lexicons->translation_map.empty())
    throw ConfigError("technique 5 needs a non-empty translation dictionary");
}

std::string Normalizer::normalize(std::string_view text, NormalizerDiagnostics* diag) const {
  const TechniqueSet& t = config_.techniques;
  std::string s(text);
  if (diag) ++diag->texts;
  if (t.has(1)) s = collapse_runs_outside_word_forms(s, diag ? &diag->runs_collapsed : nullptr);
  if (t.has(2)) s = strip_emotives(s, index_, diag);
  if (t.has(3)) s = demojize(s, index_, false, diag);
  if (t.has(4)) s = demojize(s, index_, true, diag);
  if (t.has(5)) s = translate_wordforms(s, *config_.lexicons, diag);
  if (t.has(6)) s = correct_spelling(s, *config_.lexicons, diag);
  return s;
}

Corpus Normalizer::normalize_corpus(const Corpus& corpus, NormalizerDiagnostics* diag) const {
  Corpus out = corpus;
  for (auto& c : out) c.text = normalize(c.text, diag);
  return out;
}

std::string normalize(std::string_view text, const NormalizerConfig& config) {
  return Normalizer(config).normalize(text);
}

}  // namespace vemo
