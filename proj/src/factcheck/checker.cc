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

#include "veridecode/factcheck/checker.h"

#include <algorithm>
#include <set>

#include "veridecode/errors.h"
#include "veridecode/factcheck/text_normalize.h"

namespace veridecode {

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kSupported:
      return "Supported";
    case Label::kRefuted:
      return "Refuted";
    case Label::kNotEnoughInfo:
      break;
  }
  return "NotEnoughInfo";
}

Label ParseLabel(std::string_view name) {
  if (name == "Supported") return Label::kSupported;
  if (name == "Refuted") return Label::kRefuted;
  if (name == "NotEnoughInfo") return Label::kNotEnoughInfo;
  throw ValidationError("unknown label '" + std::string(name) + "'");
}

double Jaccard(std::span<const std::string> a, std::span<const std::string> b) {
  std::set<std::string_view> sa(a.begin(), a.end());
  std::set<std::string_view> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t inter = 0;
  for (auto t : sa) inter += sb.contains(t) ? 1 : 0;
  const std::size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

OracleFactChecker::OracleFactChecker(const KnowledgeBase& kb, OracleOptions options)
    : kb_(kb), options_(options), index_(kb.documents()) {
  if (!(options_.tau > 0.0 && options_.tau <= 1.0)) {
    throw ConfigError("match threshold tau must be in (0, 1]");
  }
  if (options_.top_m < 1) throw ConfigError("retrieval needs top_m >= 1");
  fact_terms_.reserve(kb.facts().size());
  for (const auto& f : kb.facts()) fact_terms_.push_back(ContentTerms(f.text));
}

Verdict OracleFactChecker::Check(std::string_view sentence) const {
  Verdict v;
  if (kb_.empty()) return v;
  const std::vector<std::string> terms = ContentTerms(sentence);
  if (terms.empty()) return v;

  double best = 0.0;
  std::vector<std::size_t> tied;
  for (const ScoredDocument& doc : index_.Retrieve(sentence, options_.top_m)) {
    if (doc.score <= 0.0) continue;
    for (std::size_t fi : kb_.FactsOf(doc.doc_id)) {
      const double s = Jaccard(terms, fact_terms_[fi]);
      if (s > best) {
        best = s;
        tied.assign(1, fi);
      } else if (s == best && s > 0.0) {
        tied.push_back(fi);
      }
    }
  }
  v.score = best;
  if (best < options_.tau || tied.empty()) return v;

  const bool refuted = std::any_of(tied.begin(), tied.end(), [&](std::size_t fi) {
    return kb_.facts()[fi].polarity == Polarity::kContradicts;
  });
  v.label = refuted ? Label::kRefuted : Label::kSupported;
  const Polarity want = refuted ? Polarity::kContradicts : Polarity::kAsserts;
  for (std::size_t fi : tied) {
    if (kb_.facts()[fi].polarity == want) v.evidence.push_back(kb_.facts()[fi].fact_id);
  }
  std::sort(v.evidence.begin(), v.evidence.end());
  return v;
}

std::vector<Verdict> CheckAll(const FactChecker& checker, std::span<const std::string> sentences) {
  std::vector<Verdict> out(sentences.size());
  const long n = static_cast<long>(sentences.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) out[i] = checker.Check(sentences[i]);
  return out;
}

std::vector<Verdict> CheckAllSerial(const FactChecker& checker,
                                    std::span<const std::string> sentences) {
  std::vector<Verdict> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(checker.Check(s));
  return out;
}

}  // namespace veridecode
