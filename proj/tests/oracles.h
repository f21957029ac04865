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

#ifndef VEMO_TESTS_ORACLES_H_
#define VEMO_TESTS_ORACLES_H_

// Naive reference implementations, written independently of the library
// code they check. Shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vemo/eval.h"
#include "vemo/mlr.h"
#include "vemo/synthetic.h"
#include "vemo/vectorizer.h"

namespace vemo::oracle {

using Doc = std::vector<std::string>;

struct DenseResult {
  std::vector<std::string> features;       // index order
  std::vector<std::vector<double>> rows;   // n_docs x features
};

// All n-grams of `doc` with lo <= n <= hi, by brute force.
inline std::vector<std::string> all_ngrams(const Doc& doc, int lo, int hi) {
  std::vector<std::string> out;
  for (int n = lo; n <= hi; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= doc.size(); ++i) {
      std::string g = doc[i];
      for (int k = 1; k < n; ++k) g += " " + doc[i + static_cast<std::size_t>(k)];
      out.push_back(g);
    }
  }
  return out;
}

inline DenseResult vectorize(const std::vector<Doc>& docs, int lo, int hi, std::size_t cap,
                             bool tfidf) {
  std::map<std::string, double> tf;
  std::map<std::string, double> df;
  for (const auto& d : docs) {
    std::set<std::string> seen;
    for (const auto& g : all_ngrams(d, lo, hi)) {
      tf[g] += 1;
      seen.insert(g);
    }
    for (const auto& g : seen) df[g] += 1;
  }
  std::vector<std::pair<std::string, double>> ranked(tf.begin(), tf.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  DenseResult r;
  for (std::size_t i = 0; i < ranked.size() && i < cap; ++i) r.features.push_back(ranked[i].first);
  std::sort(r.features.begin(), r.features.end());
  const double n = static_cast<double>(docs.size());
  for (const auto& d : docs) {
    std::vector<double> row(r.features.size(), 0.0);
    auto grams = all_ngrams(d, lo, hi);
    for (std::size_t f = 0; f < r.features.size(); ++f) {
      double count = static_cast<double>(std::count(grams.begin(), grams.end(), r.features[f]));
      row[f] = tfidf ? count * (std::log((1 + n) / (1 + df[r.features[f]])) + 1) : count;
    }
    if (tfidf) {
      double norm = 0;
      for (double v : row) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 0)
        for (double& v : row) v /= norm;
    }
    r.rows.push_back(row);
  }
  return r;
}

struct VectorizerComparison {
  bool ok = true;
  double max_abs_diff = 0;
  std::string problem;
};

// Runs the library on space-joined `docs` and compares with the oracle.
inline VectorizerComparison compare_vectorizer(const std::vector<Doc>& docs, int lo, int hi,
                                               std::size_t cap, bool tfidf) {
  VectorizerComparison c;
  std::vector<std::string> texts;
  for (const auto& d : docs) {
    std::string t;
    for (const auto& tok : d) t += (t.empty() ? "" : " ") + tok;
    texts.push_back(t);
  }
  VectorizerConfig cfg;
  cfg.weighting = tfidf ? Weighting::kTfidf : Weighting::kCount;
  cfg.ngram_range = {lo, hi};
  cfg.n_features = cap;
  TextVectorizer v = TextVectorizer::fit(texts, cfg);
  FeatureMatrix m = v.transform(texts);
  DenseResult expect = vectorize(docs, lo, hi, cap, tfidf);
  auto fail = [&](std::string why) {
    c.ok = false;
    if (c.problem.empty()) c.problem = std::move(why);
  };
  if (v.vocabulary().size() != expect.features.size()) {
    fail("vocabulary size");
    return c;
  }
  for (std::size_t f = 0; f < expect.features.size(); ++f)
    if (v.vocabulary().entry(f).feature != expect.features[f]) fail("feature order");
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<double> dense(expect.features.size(), 0.0);
    const SparseRow& row = m.rows[d];
    double norm = 0;
    for (std::size_t k = 0; k < row.nnz(); ++k) {
      if (row.indices[k] >= dense.size()) {
        fail("index out of range");
        return c;
      }
      if (k > 0 && row.indices[k] <= row.indices[k - 1]) fail("indices not increasing");
      if (!(row.values[k] > 0)) fail("non-positive value");
      dense[row.indices[k]] = row.values[k];
      norm += row.values[k] * row.values[k];
    }
    if (tfidf && !row.empty() && std::abs(std::sqrt(norm) - 1) > 1e-9) fail("row norm");
    for (std::size_t f = 0; f < dense.size(); ++f) {
      double diff = std::abs(dense[f] - expect.rows[d][f]);
      c.max_abs_diff = std::max(c.max_abs_diff, diff);
      if (diff > 1e-9) fail("value mismatch");
    }
  }
  return c;
}

// --- Multinomial logistic regression ----------------------------------------

// Every corpus in a small space, without repeats:
//   1-3 docs of at most 2 tokens over {a, b},
//   1-2 docs of at most 3 tokens over {a, b},
//   1 doc of at most 6 tokens over {a, b},
//   1-5 docs of at most 6 tokens over {a}.
inline std::vector<std::vector<Doc>> small_corpora() {
  auto docs_upto = [](const std::vector<std::string>& alphabet, std::size_t max_len) {
    std::vector<Doc> out = {{}};
    for (std::size_t begin = 0, len = 0; len < max_len; ++len) {
      std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (const auto& a : alphabet) {
          Doc d = out[i];
          d.push_back(a);
          out.push_back(d);
        }
      }
      begin = end;
    }
    return out;
  };
  std::set<std::vector<Doc>> seen;
  std::vector<std::vector<Doc>> out;
  auto grow = [&](const std::vector<Doc>& pool, std::size_t max_docs) {
    std::vector<std::vector<Doc>> level = {{}};
    for (std::size_t n = 1; n <= max_docs; ++n) {
      std::vector<std::vector<Doc>> next;
      for (const auto& c : level) {
        for (const auto& d : pool) {
          auto e = c;
          e.push_back(d);
          if (seen.insert(e).second) out.push_back(e);
          next.push_back(std::move(e));
        }
      }
      level = std::move(next);
    }
  };
  grow(docs_upto({"a", "b"}, 2), 3);
  grow(docs_upto({"a", "b"}, 3), 2);
  grow(docs_upto({"a", "b"}, 6), 1);
  grow(docs_upto({"a"}, 6), 5);
  return out;
}

struct MlrInstance {
  std::size_t V = 0, K = 0;
  std::vector<double> W, b;
  std::vector<SparseRow> rows;
  std::vector<int> y;
  std::vector<double> s;
  double C = 1;
};

inline MlrInstance random_instance(synth::Rng& rng) {
  MlrInstance in;
  in.V = 1 + rng.below(20);
  in.K = 2 + rng.below(3);
  std::size_t n = rng.below(31);
  in.C = 0.1 + 5 * rng.uniform();
  for (std::size_t i = 0; i < in.K * in.V; ++i) in.W.push_back(2 * rng.uniform() - 1);
  for (std::size_t k = 0; k < in.K; ++k) in.b.push_back(2 * rng.uniform() - 1);
  for (std::size_t k = 0; k < in.K; ++k) in.s.push_back(0.5 + 1.5 * rng.uniform());
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow row;
    for (std::size_t f = 0; f < in.V; ++f) {
      if (rng.chance(0.3)) {
        row.indices.push_back(static_cast<std::uint32_t>(f));
        row.values.push_back(0.05 + 2 * rng.uniform());
      }
    }
    in.rows.push_back(row);
    in.y.push_back(static_cast<int>(rng.below(in.K)));
  }
  return in;
}

// J computed densely: 0.5 * sum W^2 + C * sum_i s_y * (log-sum-exp(z) - z_y).
inline double naive_loss(const MlrInstance& in, const std::vector<double>& W,
                         const std::vector<double>& b) {
  double j = 0;
  for (double w : W) j += 0.5 * w * w;
  for (std::size_t i = 0; i < in.rows.size(); ++i) {
    std::vector<double> x(in.V, 0.0);
    for (std::size_t k = 0; k < in.rows[i].nnz(); ++k) x[in.rows[i].indices[k]] = in.rows[i].values[k];
    std::vector<double> z(in.K);
    for (std::size_t c = 0; c < in.K; ++c) {
      z[c] = b[c];
      for (std::size_t f = 0; f < in.V; ++f) z[c] += W[c * in.V + f] * x[f];
    }
    double m = *std::max_element(z.begin(), z.end());
    double se = 0;
    for (double v : z) se += std::exp(v - m);
    double lse = m + std::log(se);
    j += in.C * in.s[static_cast<std::size_t>(in.y[i])] * (lse - z[static_cast<std::size_t>(in.y[i])]);
  }
  return j;
}

struct GradientCheck {
  double max_rel_error = 0;
  double loss_diff = 0;  // |library loss - naive loss|
};

// Relative error per component: |analytic - numeric| / max(|analytic|, |numeric|, floor).
inline constexpr double kRelErrorFloor = 1e-2;

inline GradientCheck check_gradient(const MlrInstance& in, double step = 1e-6) {
  LossAndGradient lg = loss_and_gradient(in.W, in.b, in.V, in.rows, in.y, in.s, in.C);
  GradientCheck out;
  out.loss_diff = std::abs(lg.loss - naive_loss(in, in.W, in.b));
  auto rel = [](double a, double n) {
    return std::abs(a - n) / std::max({std::abs(a), std::abs(n), kRelErrorFloor});
  };
  for (std::size_t i = 0; i < in.W.size(); ++i) {
    auto plus = in.W, minus = in.W;
    plus[i] += step;
    minus[i] -= step;
    double num = (naive_loss(in, plus, in.b) - naive_loss(in, minus, in.b)) / (2 * step);
    out.max_rel_error = std::max(out.max_rel_error, rel(lg.grad_weights[i], num));
  }
  for (std::size_t k = 0; k < in.b.size(); ++k) {
    auto plus = in.b, minus = in.b;
    plus[k] += step;
    minus[k] -= step;
    double num = (naive_loss(in, in.W, plus) - naive_loss(in, in.W, minus)) / (2 * step);
    out.max_rel_error = std::max(out.max_rel_error, rel(lg.grad_bias[k], num));
  }
  return out;
}

// --- Evaluation -------------------------------------------------------------

struct NaiveMetrics {
  double accuracy = 0;
  double weighted_f1 = 0;
  std::map<int, double> f1;
};

inline NaiveMetrics naive_metrics(const std::vector<EmotionLabel>& gold,
                                  const std::vector<EmotionLabel>& pred) {
  NaiveMetrics m;
  const double n = static_cast<double>(gold.size());
  double correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += gold[i] == pred[i];
  m.accuracy = correct / n;
  for (EmotionLabel c : kAllEmotions) {
    double tp = 0, gold_c = 0, pred_c = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      tp += gold[i] == c && pred[i] == c;
      gold_c += gold[i] == c;
      pred_c += pred[i] == c;
    }
    double p = pred_c > 0 ? tp / pred_c : 0;
    double r = gold_c > 0 ? tp / gold_c : 0;
    double f = p + r > 0 ? 2 * p * r / (p + r) : 0;
    m.f1[label_index(c)] = f;
    m.weighted_f1 += gold_c / n * f;
  }
  return m;
}

}  // namespace vemo::oracle

#endif  // VEMO_TESTS_ORACLES_H_
