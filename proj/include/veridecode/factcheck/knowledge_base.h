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

#ifndef VERIDECODE_FACTCHECK_KNOWLEDGE_BASE_H_
#define VERIDECODE_FACTCHECK_KNOWLEDGE_BASE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace veridecode {

enum class Polarity { kAsserts, kContradicts };

std::string_view PolarityName(Polarity p);
// Throws ValidationError for anything but "asserts" / "contradicts".
Polarity ParsePolarity(std::string_view name);

struct FactStatement {
  std::string fact_id;
  std::string text;
  Polarity polarity = Polarity::kAsserts;
  std::string source_doc_id;
};

struct Document {
  std::string doc_id;
  std::string text;
};

// Canonical facts plus the retrieval corpus they come from. Facts and
// documents are kept sorted by id, so nothing downstream depends on file
// order.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  // Throws ValidationError on duplicate ids, empty fact text or a fact whose
  // source document is missing.
  KnowledgeBase(std::vector<FactStatement> facts, std::vector<Document> documents);

  // JSON-lines: {"fact_id", "text", "polarity", "source_doc_id"} and
  // {"doc_id", "text"}. Throws IoError, ParseError or ValidationError.
  static KnowledgeBase LoadJsonl(const std::string& facts_path, const std::string& docs_path);

  const std::vector<FactStatement>& facts() const { return facts_; }
  const std::vector<Document>& documents() const { return documents_; }
  const Document* FindDocument(std::string_view doc_id) const;
  bool empty() const { return facts_.empty(); }

  // Indices into facts() of the facts drawn from `doc_id`, ascending.
  const std::vector<std::size_t>& FactsOf(std::string_view doc_id) const;

 private:
  std::vector<FactStatement> facts_;
  std::vector<Document> documents_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_doc_;
};

}  // namespace veridecode

#endif  // VERIDECODE_FACTCHECK_KNOWLEDGE_BASE_H_
