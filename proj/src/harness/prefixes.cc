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

#include "veridecode/harness/prefixes.h"

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "veridecode/errors.h"

namespace veridecode {

std::vector<PrefixEntry> LoadPrefixes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<PrefixEntry> out;
  std::unordered_set<std::string> ids;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw ParseError(path + ": malformed JSON", line_no);
    }
    if (!obj.is_object()) throw ParseError(path + ": expected a JSON object", line_no);
    auto field = [&](const char* key, bool required) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end()) {
        if (required) throw ParseError(path + ": missing field '" + key + "'", line_no);
        return {};
      }
      if (!it->is_string()) throw ParseError(path + ": field '" + key + "' must be a string", line_no);
      return it->get<std::string>();
    };
    PrefixEntry e;
    e.prefix_id = field("id", true);
    e.title = field("title", true);
    e.first_sentence = field("first_sentence", true);
    e.reference = field("reference", false);
    e.doc_id = field("doc_id", false);
    if (e.prefix_id.empty() || e.title.empty() || e.first_sentence.empty()) {
      throw ValidationError(path + ": empty id, title or first_sentence at line " +
                            std::to_string(line_no));
    }
    if (!ids.insert(e.prefix_id).second) {
      throw ValidationError(path + ": duplicate prefix id '" + e.prefix_id + "' at line " +
                            std::to_string(line_no));
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace veridecode
