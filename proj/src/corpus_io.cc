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

#include "vemo/corpus_io.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vemo/error.h"
#include "vemo/text.h"

namespace vemo {

namespace {

struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

bool is_blank(const Record& r) {
  return r.fields.size() == 1 && trim(r.fields[0]).empty();
}

std::vector<Record> split_csv(std::string_view content,
                              std::string_view source) {
  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  current.line = line;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };
  while (i < content.size()) {
    char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      if (c == '\n') ++line;
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      in_quotes = true;
      field_started = true;
      ++i;
      continue;
    }
    if (c == ',') {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') {
      ++i;
      continue;
    }
    if (c == '\n') {
      ++line;
      end_record();
      ++i;
      continue;
    }
    field.push_back(c);
    field_started = true;
    ++i;
  }
  if (in_quotes) {
    throw DataError(std::string(source) + ": unterminated quoted field starting near line " +
                    std::to_string(current.line));
  }
  if (field_started || !field.empty() || !current.fields.empty()) end_record();
  return records;
}

std::vector<Record> split_tsv(std::string_view content) {
  std::vector<Record> records;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t nl = content.find('\n', start);
    std::string_view row = content.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (nl == std::string_view::npos && row.empty()) break;
    Record r;
    r.line = line;
    std::size_t fs = 0;
    while (true) {
      std::size_t tab = row.find('\t', fs);
      r.fields.emplace_back(row.substr(fs, tab == std::string_view::npos ? std::string_view::npos : tab - fs));
      if (tab == std::string_view::npos) break;
      fs = tab + 1;
    }
    records.push_back(std::move(r));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return records;
}

int find_column(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return static_cast<int>(i);
  }
  return -1;
}

bool needs_quoting(std::string_view s) {
  if (s.empty()) return false;
  if (is_ascii_space(s.front()) || is_ascii_space(s.back())) return true;
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_csv_field(std::string& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "csv") return CorpusFormat::kCsv;
  if (name == "tsv") return CorpusFormat::kTsv;
  throw ConfigError("unknown corpus format '" + std::string(name) +
                    "' (expected csv or tsv)");
}

Corpus parse_corpus(std::string_view content, const CorpusOptions& options,
                    std::string_view source) {
  if (content.size() >= 3 && content.substr(0, 3) == "\xEF\xBB\xBF")
    content.remove_prefix(3);
  std::vector<Record> records = options.format == CorpusFormat::kCsv
                                    ? split_csv(content, source)
                                    : split_tsv(content);
  std::erase_if(records, is_blank);
  if (records.empty())
    throw DataError(std::string(source) + ": missing header row");

  const auto& header = records.front().fields;
  int text_col = find_column(header, options.text_column);
  int label_col = find_column(header, options.label_column);
  int id_col = options.id_column.empty() ? -1 : find_column(header, options.id_column);
  if (text_col < 0)
    throw DataError(std::string(source) + ": header has no text column '" +
                    options.text_column + "'");
  if (label_col < 0)
    throw DataError(std::string(source) + ": header has no label column '" +
                    options.label_column + "'");

  Corpus out;
  out.reserve(records.size() - 1);
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    std::string where = std::string(source) + ":" + std::to_string(rec.line);
    if (rec.fields.size() != header.size()) {
      throw DataError(where + ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(rec.fields.size()));
    }
    LabeledComment c;
    try {
      c.label = parse_label(rec.fields[static_cast<std::size_t>(label_col)]);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    c.text = rec.fields[static_cast<std::size_t>(text_col)];
    if (trim(c.text).empty()) throw DataError(where + ": empty text");
    if (!is_valid_utf8(c.text)) throw DataError(where + ": text is not valid UTF-8");
    c.id = id_col >= 0 ? rec.fields[static_cast<std::size_t>(id_col)]
                       : options.id_prefix + std::to_string(r - 1);
    if (!seen_ids.insert(c.id).second)
      throw DataError(where + ": duplicate id '" + c.id + "'");
    out.push_back(std::move(c));
  }
  return out;
}

Corpus load_corpus(const std::filesystem::path& path,
                   const CorpusOptions& options) {
  return parse_corpus(read_file(path), options, path.string());
}

std::string serialize_corpus(const Corpus& comments,
                             const CorpusOptions& options) {
  std::string out;
  std::string id_name = options.id_column.empty() ? "id" : options.id_column;
  if (options.format == CorpusFormat::kTsv) {
    out += id_name + "\t" + options.label_column + "\t" + options.text_column + "\n";
    for (const auto& c : comments) {
      for (const std::string* f : {&c.id, &c.text}) {
        if (f->find_first_of("\t\r\n") != std::string::npos)
          throw DataError("comment " + c.id + " cannot be written as TSV (tab or newline)");
      }
      out += c.id;
      out += '\t';
      out += label_name(c.label);
      out += '\t';
      out += c.text;
      out += '\n';
    }
    return out;
  }
  append_csv_field(out, id_name);
  out.push_back(',');
  append_csv_field(out, options.label_column);
  out.push_back(',');
  append_csv_field(out, options.text_column);
  out.push_back('\n');
  for (const auto& c : comments) {
    append_csv_field(out, c.id);
    out.push_back(',');
    out.append(label_name(c.label));
    out.push_back(',');
    append_csv_field(out, c.text);
    out.push_back('\n');
  }
  return out;
}

void save_corpus(const Corpus& comments, const std::filesystem::path& path,
                 const CorpusOptions& options) {
  write_file(path, serialize_corpus(comments, options));
}

void check_disjoint(const CorpusSplit& split) {
  std::unordered_set<std::string> ids;
  const std::pair<const char*, const Corpus*> parts[] = {
      {"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}};
  for (const auto& [name, corpus] : parts) {
    for (const auto& c : *corpus) {
      if (!ids.insert(c.id).second)
        throw DataError(std::string("id '") + c.id + "' in " + name +
                        " split also appears in an earlier split");
    }
  }
}

CorpusSplit load_splits(const std::filesystem::path& train,
                        const std::filesystem::path& dev,
                        const std::filesystem::path& test,
                        const CorpusOptions& options) {
  CorpusSplit split;
  CorpusOptions o = options;
  o.id_prefix = "train-";
  split.train = load_corpus(train, o);
  o.id_prefix = "dev-";
  split.dev = load_corpus(dev, o);
  o.id_prefix = "test-";
  split.test = load_corpus(test, o);
  check_disjoint(split);
  return split;
}

std::vector<EmotionLabel> labels_of(const Corpus& comments) {
  std::vector<EmotionLabel> out;
  out.reserve(comments.size());
  for (const auto& c : comments) out.push_back(c.label);
  return out;
}

std::vector<std::string> texts_of(const Corpus& comments) {
  std::vector<std::string> out;
  out.reserve(comments.size());
  for (const auto& c : comments) out.push_back(c.text);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error reading '" + path.string() + "'");
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("error writing '" + path.string() + "'");
}

}  // namespace vemo
