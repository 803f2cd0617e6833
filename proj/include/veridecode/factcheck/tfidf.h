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

#ifndef VERIDECODE_FACTCHECK_TFIDF_H_
#define VERIDECODE_FACTCHECK_TFIDF_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "veridecode/factcheck/knowledge_base.h"

namespace veridecode {

struct ScoredDocument {
  std::string doc_id;
  double score = 0.0;
};

using SparseVector = std::map<std::string, double, std::less<>>;

// TF-IDF over the knowledge-base documents. Term frequency is the raw count
// of a content term; idf(t) = ln((1 + N) / (1 + df(t))) + 1, so every term
// keeps a positive weight and identical texts score exactly 1.
class TfidfIndex {
 public:
  TfidfIndex() = default;
  explicit TfidfIndex(const std::vector<Document>& documents);

  double Idf(std::string_view term) const;
  SparseVector Vectorize(std::string_view text) const;

  // Cosine similarity of the two texts under this index's idf table, in [0, 1].
  double Relevance(std::string_view text, std::string_view other) const;

  // Documents by descending cosine similarity to `query`, ties by doc_id,
  // truncated to top_m. Empty when the query has no content terms.
  // Throws ConfigError for top_m < 1.
  std::vector<ScoredDocument> Retrieve(std::string_view query, int top_m) const;
  // Same ranking; the per-document scoring loop runs without OpenMP.
  std::vector<ScoredDocument> RetrieveSerial(std::string_view query, int top_m) const;

  std::size_t size() const { return doc_ids_.size(); }

 private:
  std::vector<ScoredDocument> Rank(std::string_view query, int top_m, bool parallel) const;

  std::size_t num_docs_ = 0;
  std::map<std::string, std::size_t, std::less<>> df_;
  std::vector<std::string> doc_ids_;
  std::vector<SparseVector> doc_vectors_;  // L2-normalized
};

double Cosine(const SparseVector& a, const SparseVector& b);

}  // namespace veridecode

#endif  // VERIDECODE_FACTCHECK_TFIDF_H_
