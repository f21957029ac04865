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

#ifndef VEMO_TEXT_H_
#define VEMO_TEXT_H_

// UTF-8 helpers shared by the normalizer, tokenizer and clause splitter.
// All functions operate on UTF-8 byte strings and never produce invalid
// UTF-8 from valid input.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vemo {

bool is_valid_utf8(std::string_view text);

// Decodes one scalar value at byte offset `pos`, advancing `pos`. Invalid
// sequences decode to U+FFFD and advance by one byte.
char32_t next_code_point(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

std::vector<char32_t> decode_utf8(std::string_view text);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Letters, digits, combining marks and '_' (ICU character properties).
bool is_word_char(char32_t cp);
// Letters and digits only.
bool is_alnum(char32_t cp);

// Simple per-code-point lowercase mapping.
std::string to_lower(std::string_view text);

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view trim(std::string_view text);
std::vector<std::string_view> split_whitespace(std::string_view text);
// Whitespace runs become one space; leading/trailing whitespace removed.
std::string collapse_whitespace(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Length in bytes of a `:[a-z0-9_]+:` word form starting at `pos`, or 0.
std::size_t word_form_length(std::string_view text, std::size_t pos);
bool is_word_form(std::string_view token);

// 64-bit FNV-1a. Used for fingerprints and manifests, not for security.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

}  // namespace vemo

#endif  // VEMO_TEXT_H_
