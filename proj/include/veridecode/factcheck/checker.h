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

#ifndef VERIDECODE_FACTCHECK_CHECKER_H_
#define VERIDECODE_FACTCHECK_CHECKER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veridecode/factcheck/knowledge_base.h"
#include "veridecode/factcheck/tfidf.h"

namespace veridecode {

enum class Label { kSupported, kRefuted, kNotEnoughInfo };

std::string_view LabelName(Label label);
Label ParseLabel(std::string_view name);

struct Verdict {
  Label label = Label::kNotEnoughInfo;
  // Sorted fact ids; empty iff the label is NotEnoughInfo.
  std::vector<std::string> evidence;
  double score = 0.0;

  bool verified() const { return label != Label::kNotEnoughInfo; }
  bool operator==(const Verdict&) const = default;
};

// Maps one processed sentence to a verdict. Implementations must be pure
// and safe to call concurrently.
class FactChecker {
 public:
  virtual ~FactChecker() = default;
  virtual Verdict Check(std::string_view sentence) const = 0;
};

struct OracleOptions {
  // Minimum content-word Jaccard overlap for a Supported/Refuted label.
  double tau = 0.8;
  // Documents retrieved per sentence.
  int top_m = 5;
};

// Knowledge-base oracle: retrieve the top documents by TF-IDF, then compare
// the sentence's content words against every fact from those documents.
// The best Jaccard overlap decides; at an exact tie between polarities
// Refuted wins, and the evidence is every tied fact of the winning polarity.
class OracleFactChecker : public FactChecker {
 public:
  // Throws ConfigError unless 0 < tau <= 1 and top_m >= 1.
  OracleFactChecker(const KnowledgeBase& kb, OracleOptions options = {});

  Verdict Check(std::string_view sentence) const override;

  const TfidfIndex& index() const { return index_; }
  const OracleOptions& options() const { return options_; }

 private:
  const KnowledgeBase& kb_;
  OracleOptions options_;
  TfidfIndex index_;
  std::vector<std::vector<std::string>> fact_terms_;
};

// |A ∩ B| / |A ∪ B| over distinct terms; 0 when both are empty.
double Jaccard(std::span<const std::string> a, std::span<const std::string> b);

// Checks every sentence. The parallel variant spreads sentences over OpenMP
// threads and returns exactly what the serial one does.
std::vector<Verdict> CheckAll(const FactChecker& checker, std::span<const std::string> sentences);
std::vector<Verdict> CheckAllSerial(const FactChecker& checker,
                                    std::span<const std::string> sentences);

}  // namespace veridecode

#endif  // VERIDECODE_FACTCHECK_CHECKER_H_
