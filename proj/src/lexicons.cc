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

#include "vemo/lexicons.h"

#include <filesystem>

#include "vemo/corpus_io.h"
#include "vemo/error.h"
#include "vemo/text.h"

namespace vemo {

namespace {

template <typename Map>
std::optional<std::string> find_in(const Map& map, std::string_view key) {
  auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

void require_word_form(std::string_view s, std::string_view what) {
  if (!is_word_form(s))
    throw DataError(std::string(what) + ": '" + std::string(s) +
                    "' is not a :lowercase_word_form:");
}

bool contains_word_form(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (word_form_length(s, i) > 0) return true;
  }
  return false;
}

}  // namespace

std::optional<std::string> LexiconSet::lookup_correction(std::string_view token) const {
  return find_in(correction_map, token);
}

std::optional<std::string> LexiconSet::lookup_translation(std::string_view word_form) const {
  return find_in(translation_map, word_form);
}

std::string LexiconSet::fingerprint() const {
  std::uint64_t h = fnv1a64("vemo-lexicons-v1");
  auto mix = [&h](std::string_view tag, const StringMap& m) {
    h = fnv1a64(tag, h);
    for (const auto& [k, v] : m) {
      h = fnv1a64(k, h);
      h = fnv1a64("\t", h);
      h = fnv1a64(v, h);
      h = fnv1a64("\n", h);
    }
  };
  mix("emoticons", emoticon_map);
  mix("emojis", emoji_map);
  mix("translations", translation_map);
  mix("corrections", correction_map);
  h = fnv1a64("removals", h);
  for (const auto& w : removal_list) {
    h = fnv1a64(w, h);
    h = fnv1a64("\n", h);
  }
  return hex64(h);
}

StringMap parse_lexicon_file(std::string_view content, std::string_view source) {
  StringMap out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    std::string_view line = content.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty() || line.front() == '#') continue;

    std::string where = std::string(source) + ":" + std::to_string(line_no);
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos)
      throw DataError(where + ": expected exactly 2 tab-separated columns");
    std::string_view key = trim(line.substr(0, tab));
    std::string_view value = trim(line.substr(tab + 1));
    if (key.empty()) throw DataError(where + ": empty key");
    if (!is_valid_utf8(line)) throw DataError(where + ": invalid UTF-8");
    auto [it, inserted] = out.emplace(std::string(key), std::string(value));
    if (!inserted)
      throw DataError(where + ": duplicate key '" + std::string(key) + "'");
  }
  return out;
}

std::set<std::string, std::less<>> parse_word_list(std::string_view content) {
  std::set<std::string, std::less<>> out;
  for (std::size_t start = 0; start < content.size();) {
    std::size_t nl = content.find('\n', start);
    std::string_view line = trim(content.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    start = nl == std::string_view::npos ? content.size() : nl + 1;
    if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;
    out.insert(to_lower(line));
  }
  return out;
}

void validate_lexicons(const LexiconSet& lex) {
  for (const auto& [k, v] : lex.emoticon_map) require_word_form(v, "emoticon '" + k + "'");
  for (const auto& [k, v] : lex.emoji_map) require_word_form(v, "emoji '" + k + "'");
  for (const auto& [k, v] : lex.emoticon_map) {
    if (lex.emoji_map.contains(k))
      throw DataError("'" + k + "' is listed as both an emoticon and an emoji");
  }
  for (const auto& [k, v] : lex.translation_map) {
    require_word_form(k, "translation key");
    if (trim(v).empty()) throw DataError("translation of '" + k + "' is empty");
    if (contains_word_form(v))
      throw DataError("translation of '" + k + "' contains a word form");
  }
  for (const auto& [k, v] : lex.correction_map) {
    if (to_lower(k) != k) throw DataError("correction key '" + k + "' is not lowercase");
    if (split_whitespace(k).size() != 1)
      throw DataError("correction key '" + k + "' contains whitespace");
    if (trim(v).empty()) throw DataError("correction of '" + k + "' is empty");
  }
  // Values must survive a second correction pass unchanged.
  for (const auto& [k, v] : lex.correction_map) {
    for (std::string_view tok : split_whitespace(v)) {
      std::string low = to_lower(tok);
      auto it = lex.correction_map.find(low);
      if (it != lex.correction_map.end() && it->second != tok)
        throw DataError("correction of '" + k + "' yields '" + std::string(tok) +
                        "', which is itself corrected to '" + it->second + "'");
    }
  }
}

LexiconSet load_lexicons(const std::filesystem::path& dir, LexiconLoadReport* report) {
  if (!std::filesystem::is_directory(dir))
    throw DataError("lexicon directory '" + dir.string() + "' does not exist");
  LexiconSet lex;
  LexiconLoadReport local;
  auto load_map = [&](std::string_view name, StringMap& target) {
    auto path = dir / name;
    if (!std::filesystem::exists(path)) {
      local.warnings.push_back("lexicon file '" + path.string() + "' not found; using an empty dictionary");
      return;
    }
    target = parse_lexicon_file(read_file(path), path.string());
  };
  load_map(kEmoticonsFile, lex.emoticon_map);
  load_map(kEmojisFile, lex.emoji_map);
  load_map(kTranslationsFile, lex.translation_map);
  load_map(kCorrectionsFile, lex.correction_map);
  auto removals = dir / kRemovalsFile;
  if (std::filesystem::exists(removals)) {
    lex.removal_list = parse_word_list(read_file(removals));
  } else {
    local.warnings.push_back("lexicon file '" + removals.string() + "' not found; using an empty list");
  }
  validate_lexicons(lex);
  local.emoticons = lex.emoticon_map.size();
  local.emojis = lex.emoji_map.size();
  local.translations = lex.translation_map.size();
  local.corrections = lex.correction_map.size();
  local.removals = lex.removal_list.size();
  if (report) *report = std::move(local);
  return lex;
}

}  // namespace vemo
