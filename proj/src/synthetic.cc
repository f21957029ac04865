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

#include "vemo/synthetic.h"

#include <array>
#include <map>

#include "vemo/text.h"

namespace vemo::synth {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Words = std::vector<std::string>;

void append_words(std::string& text, const std::string& piece) {
  if (!text.empty()) text += ' ';
  text += piece;
}

// Shuffle with the portable generator (std::shuffle's algorithm is
// implementation-defined).
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// Repeats the last code point of `word` 2-4 extra times.
std::string elongate(const std::string& word, Rng& rng) {
  std::vector<char32_t> cps = decode_utf8(word);
  if (cps.empty()) return word;
  std::size_t extra = 2 + rng.below(3);
  for (std::size_t i = 0; i < extra; ++i) cps.push_back(cps.back());
  return encode_utf8(cps);
}

const std::array<Words, kNumEmotions>& label_words() {
  static const std::array<Words, kNumEmotions> words = {{
      {"vui", "thích", "tuyệt", "hạnh phúc", "sướng", "yêu đời"},
      {"buồn", "chán", "tủi thân", "cô đơn", "nhớ", "tiếc"},
      {"tức", "bực", "điên tiết", "cay cú", "nổi khùng", "phát cáu"},
      {"sợ", "hãi", "rùng mình", "lo sợ", "hoảng", "ghê rợn"},
      {"tởm", "gớm", "kinh tởm", "bẩn", "thô bỉ", "ghê"},
      {"bất ngờ", "ngạc nhiên", "trời ơi", "không ngờ", "wow", "thật á"},
      {"thông tin", "hỏi", "chia sẻ", "lịch", "địa chỉ", "giá"},
  }};
  return words;
}

const Words& fillers() {
  static const Words words = {"hôm nay", "tôi", "thấy", "cái", "này", "bạn", "mình", "đi",
                              "xem", "phim", "ở", "nhà", "trường", "lớp", "anh", "chị",
                              "em", "ai", "đó", "nói", "với", "được", "biết", "không",
                              "rồi", "quá", "thật", "luôn", "vậy", "người ta"};
  return words;
}

// Spellings from the shipped correction dictionary.
const std::map<std::string, Words>& misspellings() {
  static const std::map<std::string, Words> m = {
      {"biết", {"pk", "bjt", "bit"}}, {"không", {"ko", "hok", "k"}}, {"được", {"dc", "đc"}},
      {"rồi", {"r"}},                 {"quá", {"wá", "qá"}},         {"vậy", {"z", "v"}},
      {"người ta", {"ngta", "nta"}},  {"hôm nay", {"hnay"}},
  };
  return m;
}

// Label frequencies roughly following a skewed social-media corpus.
constexpr std::array<double, kNumEmotions> kLabelShare = {0.28, 0.17, 0.07, 0.06, 0.19, 0.06, 0.17};

EmotionLabel draw_label(Rng& rng) {
  double u = rng.uniform();
  double acc = 0;
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    acc += kLabelShare[i];
    if (u < acc) return kAllEmotions[i];
  }
  return EmotionLabel::kOther;
}

}  // namespace

const std::vector<std::string>& label_emotives(EmotionLabel label) {
  static const std::array<Words, kNumEmotions> emotives = {{
      {"😂", "😍", ":)", ":D", "😁"},
      {"😢", "😭", ":(", "💔"},
      {"😡", "😠", "🤬", ":@"},
      {"😱", "😨", "😰"},
      {"🤮", "🤢", "💩"},
      {"😮", "😲", "🤯", ":O"},
      {"🤔", "😐", ":|"},
  }};
  return emotives[static_cast<std::size_t>(label_index(label))];
}

CorpusSplit separable_corpus(std::size_t docs_per_class, std::size_t dev_docs_per_class,
                             std::uint64_t seed) {
  Rng rng(seed);
  std::array<Words, kNumEmotions> vocab;
  for (std::size_t c = 0; c < kNumEmotions; ++c)
    for (std::size_t w = 0; w < 8; ++w)
      vocab[c].push_back("c" + std::to_string(c) + "w" + std::to_string(w));
  auto make = [&](std::size_t per_class, const std::string& prefix) {
    Corpus out;
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t c = 0; c < kNumEmotions; ++c) {
        std::string text;
        std::size_t len = 3 + rng.below(5);
        for (std::size_t t = 0; t < len; ++t) append_words(text, rng.pick(vocab[c]));
        out.push_back({prefix + std::to_string(out.size()), text, kAllEmotions[c]});
      }
    }
    return out;
  };
  CorpusSplit split;
  split.train = make(docs_per_class, "train-");
  split.dev = make(dev_docs_per_class, "dev-");
  split.test = make(dev_docs_per_class, "test-");
  return split;
}

CorpusSplit emoji_signal_corpus(const EmojiCorpusOptions& o) {
  Rng rng(o.seed);
  Corpus all;
  for (std::size_t i = 0; i < o.n_comments; ++i) {
    EmotionLabel label = draw_label(rng);
    const auto c = static_cast<std::size_t>(label_index(label));
    const Words& emotives = label_emotives(label);
    bool emoji_only = rng.chance(o.emoji_only_fraction);

    Words pieces;
    std::size_t n_fill = 2 + rng.below(5);
    for (std::size_t f = 0; f < n_fill; ++f) {
      std::string w = rng.pick(fillers());
      auto it = misspellings().find(w);
      if (it != misspellings().end() && rng.chance(o.misspelling_rate)) w = rng.pick(it->second);
      pieces.push_back(std::move(w));
    }
    if (!emoji_only) {
      std::size_t n_sig = 1 + rng.below(2);
      for (std::size_t s = 0; s < n_sig; ++s) {
        std::string w = rng.pick(label_words()[c]);
        if (rng.chance(o.elongation_rate)) w = elongate(w, rng);
        pieces.push_back(std::move(w));
      }
      // Occasional word from another label.
      if (rng.chance(0.15)) pieces.push_back(rng.pick(label_words()[rng.below(kNumEmotions)]));
      shuffle(pieces, rng);
    }
    std::string text = join(pieces, " ");
    if (emoji_only || rng.chance(0.4)) {
      std::size_t n_emo = 1 + rng.below(2);
      for (std::size_t e = 0; e < n_emo; ++e) {
        std::string emo = rng.pick(emotives);
        if (rng.chance(o.elongation_rate)) {
          emo = decode_utf8(emo).size() == 1 ? emo + emo + emo : elongate(emo, rng);
        }
        if (rng.chance(0.5)) {
          text += emo;  // glued to the previous word
        } else {
          text += " " + emo;
        }
      }
    }
    all.push_back({"", std::move(text), label});
  }
  CorpusSplit split;
  std::size_t n_train = all.size() * 70 / 100;
  std::size_t n_dev = all.size() * 15 / 100;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Corpus& target = i < n_train ? split.train : i < n_train + n_dev ? split.dev : split.test;
    const char* prefix = &target == &split.train ? "train-" : &target == &split.dev ? "dev-" : "test-";
    all[i].id = prefix + std::to_string(target.size());
    target.push_back(std::move(all[i]));
  }
  return split;
}

std::vector<std::string> StopwordCorpus::candidates() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < noise_tokens.size(); ++i) {
    out.push_back(correlated_tokens[i]);
    out.push_back(noise_tokens[i]);
  }
  return out;
}

StopwordCorpus stopword_corpus(std::uint64_t seed) {
  Rng rng(seed);
  StopwordCorpus sc;
  const std::array<EmotionLabel, 5> labels = {EmotionLabel::kEnjoyment, EmotionLabel::kSadness,
                                              EmotionLabel::kAnger, EmotionLabel::kFear,
                                              EmotionLabel::kDisgust};
  sc.correlated_tokens = {"vui", "buồn", "giận", "sợ", "ghê"};
  sc.noise_tokens = {"thì", "nhé", "nha", "ạ", "đấy"};
  const std::array<Words, 5> signal = {{
      {"cười", "tươi", "sướng", "phê"},
      {"khóc", "tủi", "nhớ", "tiếc"},
      {"tức", "bực", "cáu", "điên"},
      {"hãi", "run", "hoảng", "rợn"},
      {"tởm", "gớm", "bẩn", "ói"},
  }};
  const Words filler = {"hôm", "nay", "tôi", "thấy", "cái", "này", "bạn", "mình", "đi", "xem", "ở", "nhà"};

  auto doc = [&](std::size_t c, bool train) {
    Words w;
    std::size_t n_fill = 3 + rng.below(3);
    for (std::size_t i = 0; i < n_fill; ++i) w.push_back(rng.pick(filler));
    if (rng.chance(train ? 0.6 : 0.8)) w.push_back(sc.correlated_tokens[c]);
    if (rng.chance(train ? 0.7 : 0.5)) w.push_back(rng.pick(signal[c]));
    // sparse in dev, so most comments carry at most one noise token
    for (std::size_t j = 0; j < sc.noise_tokens.size(); ++j) {
      double p = train ? (j == c ? 0.8 : 0.0) : 0.2;
      if (rng.chance(p)) w.push_back(sc.noise_tokens[j]);
    }
    shuffle(w, rng);
    return join(w, " ");
  };
  for (std::size_t i = 0; i < 80; ++i)
    for (std::size_t c = 0; c < labels.size(); ++c)
      sc.split.train.push_back({"train-" + std::to_string(sc.split.train.size()), doc(c, true), labels[c]});
  for (std::size_t i = 0; i < 200; ++i)
    for (std::size_t c = 0; c < labels.size(); ++c)
      sc.split.dev.push_back({"dev-" + std::to_string(sc.split.dev.size()), doc(c, false), labels[c]});
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t c = 0; c < labels.size(); ++c)
      sc.split.test.push_back({"test-" + std::to_string(sc.split.test.size()), doc(c, false), labels[c]});
  return sc;
}

std::vector<std::string> clause_fuzz_texts(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const Words words = {"tôi", "thấy", "phim", "này", "hay", "buồn", "vui", "quá", "bạn", "ơi",
                       "nhưng", "mà", "tuy", "nhiên", "đẹp", "xấu", "lắm", "😂", ":)", "3.5"};
  const Words punct = {",", ".", ";", "!", "?", "..."};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    std::size_t len = 1 + rng.below(20);
    for (std::size_t t = 0; t < len; ++t) {
      append_words(text, rng.pick(words));
      if (rng.chance(0.2)) text += rng.pick(punct);
    }
    out.push_back(std::move(text));
  }
  return out;
}

}  // namespace vemo::synth
