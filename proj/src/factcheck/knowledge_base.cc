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

#include "veridecode/factcheck/knowledge_base.h"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

using nlohmann::json;

std::string RequireString(const json& obj, const char* key, long line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(std::string("missing string field '") + key + "'", line);
  }
  return it->get<std::string>();
}

template <class Fn>
void ForEachJsonLine(const std::string& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      throw ParseError(path + ": malformed JSON", line_no);
    }
    if (!obj.is_object()) throw ParseError(path + ": expected a JSON object", line_no);
    fn(obj, line_no);
  }
}

}  // namespace

std::string_view PolarityName(Polarity p) {
  return p == Polarity::kAsserts ? "asserts" : "contradicts";
}

Polarity ParsePolarity(std::string_view name) {
  if (name == "asserts") return Polarity::kAsserts;
  if (name == "contradicts") return Polarity::kContradicts;
  throw ValidationError("unknown polarity '" + std::string(name) + "'");
}

KnowledgeBase::KnowledgeBase(std::vector<FactStatement> facts, std::vector<Document> documents)
    : facts_(std::move(facts)), documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  for (std::size_t i = 1; i < documents_.size(); ++i) {
    if (documents_[i].doc_id == documents_[i - 1].doc_id) {
      throw ValidationError("duplicate doc_id '" + documents_[i].doc_id + "'");
    }
  }
  std::sort(facts_.begin(), facts_.end(),
            [](const FactStatement& a, const FactStatement& b) { return a.fact_id < b.fact_id; });
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    const FactStatement& f = facts_[i];
    if (i > 0 && f.fact_id == facts_[i - 1].fact_id) {
      throw ValidationError("duplicate fact_id '" + f.fact_id + "'");
    }
    if (f.text.empty()) throw ValidationError("fact '" + f.fact_id + "' has empty text");
    if (!FindDocument(f.source_doc_id)) {
      throw ValidationError("fact '" + f.fact_id + "' cites unknown document '" +
                            f.source_doc_id + "'");
    }
    by_doc_[f.source_doc_id].push_back(i);
  }
}

KnowledgeBase KnowledgeBase::LoadJsonl(const std::string& facts_path,
                                       const std::string& docs_path) {
  std::vector<Document> docs;
  ForEachJsonLine(docs_path, [&](const json& obj, long line) {
    docs.push_back({RequireString(obj, "doc_id", line), RequireString(obj, "text", line)});
  });
  std::vector<FactStatement> facts;
  ForEachJsonLine(facts_path, [&](const json& obj, long line) {
    FactStatement f;
    f.fact_id = RequireString(obj, "fact_id", line);
    f.text = RequireString(obj, "text", line);
    try {
      f.polarity = ParsePolarity(RequireString(obj, "polarity", line));
    } catch (const ValidationError& e) {
      throw ParseError(facts_path + ": " + e.what(), line);
    }
    f.source_doc_id = RequireString(obj, "source_doc_id", line);
    facts.push_back(std::move(f));
  });
  return KnowledgeBase(std::move(facts), std::move(docs));
}

const Document* KnowledgeBase::FindDocument(std::string_view doc_id) const {
  auto it = std::lower_bound(documents_.begin(), documents_.end(), doc_id,
                             [](const Document& d, std::string_view id) { return d.doc_id < id; });
  return it != documents_.end() && it->doc_id == doc_id ? &*it : nullptr;
}

const std::vector<std::size_t>& KnowledgeBase::FactsOf(std::string_view doc_id) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_doc_.find(doc_id);
  return it == by_doc_.end() ? kNone : it->second;
}

}  // namespace veridecode
