// Copyright 2026 The veridecode Authors.
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

#include "veridecode/factcheck/tfidf.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "veridecode/errors.h"
#include "veridecode/factcheck/text_normalize.h"

namespace veridecode {
namespace {

double Norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [t, w] : v) s += w * w;
  return std::sqrt(s);
}

double Dot(const SparseVector& a, const SparseVector& b) {
  const SparseVector& small = a.size() <= b.size() ? a : b;
  const SparseVector& large = a.size() <= b.size() ? b : a;
  double s = 0.0;
  for (const auto& [t, w] : small) {
    auto it = large.find(t);
    if (it != large.end()) s += w * it->second;
  }
  return s;
}

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double Cosine(const SparseVector& a, const SparseVector& b) {
  const double na = Norm(a), nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return Clamp01(Dot(a, b) / (na * nb));
}

TfidfIndex::TfidfIndex(const std::vector<Document>& documents) : num_docs_(documents.size()) {
  for (const Document& d : documents) {
    auto terms = ContentTerms(d.text);
    std::set<std::string> unique(terms.begin(), terms.end());
    for (const auto& t : unique) ++df_[t];
  }
  doc_ids_.reserve(documents.size());
  doc_vectors_.reserve(documents.size());
  for (const Document& d : documents) {
    SparseVector v = Vectorize(d.text);
    const double n = Norm(v);
    if (n > 0.0) {
      for (auto& [t, w] : v) w /= n;
    }
    doc_ids_.push_back(d.doc_id);
    doc_vectors_.push_back(std::move(v));
  }
}

double TfidfIndex::Idf(std::string_view term) const {
  auto it = df_.find(term);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(num_docs_)) / (1.0 + df)) + 1.0;
}

SparseVector TfidfIndex::Vectorize(std::string_view text) const {
  SparseVector v;
  for (auto& t : ContentTerms(text)) v[t] += 1.0;
  for (auto& [t, w] : v) w *= Idf(t);
  return v;
}

double TfidfIndex::Relevance(std::string_view text, std::string_view other) const {
  return Cosine(Vectorize(text), Vectorize(other));
}

std::vector<ScoredDocument> TfidfIndex::Retrieve(std::string_view query, int top_m) const {
  return Rank(query, top_m, true);
}

std::vector<ScoredDocument> TfidfIndex::RetrieveSerial(std::string_view query, int top_m) const {
  return Rank(query, top_m, false);
}

std::vector<ScoredDocument> TfidfIndex::Rank(std::string_view query, int top_m,
                                             bool parallel) const {
  if (top_m < 1) throw ConfigError("retrieval needs top_m >= 1");
  SparseVector q = Vectorize(query);
  const double qn = Norm(q);
  if (qn == 0.0) return {};
  for (auto& [t, w] : q) w /= qn;

  const long n = static_cast<long>(doc_vectors_.size());
  std::vector<double> scores(doc_vectors_.size(), 0.0);
#pragma omp parallel for schedule(static) if (parallel && n >= 256)
  for (long i = 0; i < n; ++i) scores[i] = Clamp01(Dot(q, doc_vectors_[i]));

  std::vector<std::size_t> order(doc_vectors_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t take = std::min<std::size_t>(top_m, order.size());
  std::partial_sort(order.begin(), order.begin() + take, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return doc_ids_[a] < doc_ids_[b];
                    });
  std::vector<ScoredDocument> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({doc_ids_[order[i]], scores[order[i]]});
  return out;
}

}  // namespace veridecode
