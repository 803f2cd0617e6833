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

#ifndef VERIDECODE_HARNESS_PREFIXES_H_
#define VERIDECODE_HARNESS_PREFIXES_H_

#include <string>
#include <vector>

namespace veridecode {

struct PrefixEntry {
  std::string prefix_id;
  std::string title;
  std::string first_sentence;
  // Optional human continuation used for the reference row and the 4-gram
  // proportion.
  std::string reference;
  // Optional knowledge-base document for the page, for relevance scores.
  std::string doc_id;

  // Title and first sentence joined as "<title>. <first sentence>".
  std::string prefix_text() const { return title + ". " + first_sentence; }
};

// JSON-lines with "id", "title", "first_sentence" and optional "reference"
// and "doc_id". Blank lines are ignored. Throws IoError, ParseError (with
// the line number) or ValidationError for duplicate ids and empty fields.
std::vector<PrefixEntry> LoadPrefixes(const std::string& path);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_PREFIXES_H_
