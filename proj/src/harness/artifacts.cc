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

#include "veridecode/harness/artifacts.h"

#include <charconv>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

#include "veridecode/errors.h"
#include "veridecode/lm/tokenizer.h"

namespace veridecode {
namespace {

using Json = nlohmann::ordered_json;

// Integer-looking parameters become JSON integers, the rest numbers.
Json ParamsJson(const StrategyConfig& cfg) {
  Json params = Json::object();
  for (const auto& [key, value] : cfg.Params()) {
    long long i = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), i);
    if (ec == std::errc() && ptr == value.data() + value.size()) {
      params[key] = i;
    } else {
      params[key] = std::stod(value);
    }
  }
  return params;
}

template <class Row, class Fn>
void WriteLines(const std::string& path, const std::vector<Row>& rows, Fn to_json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const Row& row : rows) out << to_json(row).dump() << '\n';
  if (!out) throw IoError("failed writing " + path);
}

template <class Fn>
void ReadLines(const std::string& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(Json::parse(line));
    } catch (const Json::exception& e) {
      throw ParseError(path + ": " + e.what(), line_no);
    } catch (const ConfigError& e) {
      throw ParseError(path + ": " + e.what(), line_no);
    } catch (const ValidationError& e) {
      throw ParseError(path + ": " + e.what(), line_no);
    }
  }
}

}  // namespace

GenerationRow MakeGenerationRow(const GenerationRecord& record, const Vocabulary& vocab,
                                std::size_t blocking_dead_ends) {
  GenerationRow row;
  row.prefix_id = record.prefix_id;
  row.strategy = record.strategy;
  row.seed = record.seed;
  row.tokens = vocab.Decode(record.tokens);
  row.token_logprobs = record.token_logprobs;
  row.text = record.text.empty() ? JoinTokens(row.tokens) : record.text;
  row.blocking_dead_ends = blocking_dead_ends;
  return row;
}

void WriteGenerations(const std::string& path, const std::vector<GenerationRow>& rows) {
  WriteLines(path, rows, [](const GenerationRow& r) {
    Json j;
    j["prefix_id"] = r.prefix_id;
    j["strategy"] = ToSpec(r.strategy);
    j["name"] = r.strategy.Describe();
    j["params"] = ParamsJson(r.strategy);
    j["seed"] = r.seed;
    j["tokens"] = r.tokens;
    j["token_logprobs"] = r.token_logprobs;
    j["text"] = r.text;
    j["blocking_dead_ends"] = r.blocking_dead_ends;
    return j;
  });
}

void WriteSentences(const std::string& path, const std::vector<SentenceRow>& rows) {
  WriteLines(path, rows, [](const SentenceRow& r) {
    Json j;
    j["prefix_id"] = r.prefix_id;
    j["strategy"] = r.strategy;
    j["seed"] = r.seed;
    j["sentence_index"] = r.sentence_index;
    j["text"] = r.text;
    j["raw_text"] = r.raw_text;
    j["token_count"] = r.token_count;
    j["verifiable"] = r.verifiable;
    return j;
  });
}

void WriteVerdicts(const std::string& path, const std::vector<VerdictRow>& rows) {
  WriteLines(path, rows, [](const VerdictRow& r) {
    Json j;
    j["prefix_id"] = r.prefix_id;
    j["strategy"] = r.strategy;
    j["seed"] = r.seed;
    j["sentence_index"] = r.sentence_index;
    j["label"] = LabelName(r.verdict.label);
    j["evidence"] = r.verdict.evidence;
    j["score"] = r.verdict.score;
    j["by_length"] = r.by_length;
    return j;
  });
}

std::vector<GenerationRow> ReadGenerations(const std::string& path) {
  std::vector<GenerationRow> rows;
  ReadLines(path, [&](const Json& j) {
    GenerationRow r;
    r.prefix_id = j.at("prefix_id").get<std::string>();
    r.strategy = ParseStrategy(j.at("strategy").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tokens = j.at("tokens").get<std::vector<std::string>>();
    for (const auto& lp : j.at("token_logprobs")) {
      // Non-finite log-probs serialize as null.
      r.token_logprobs.push_back(lp.is_null() ? -std::numeric_limits<double>::infinity()
                                              : lp.get<double>());
    }
    r.text = j.at("text").get<std::string>();
    if (j.contains("blocking_dead_ends")) {
      r.blocking_dead_ends = j.at("blocking_dead_ends").get<std::size_t>();
    }
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<VerdictRow> ReadVerdicts(const std::string& path) {
  std::vector<VerdictRow> rows;
  ReadLines(path, [&](const Json& j) {
    VerdictRow r;
    r.prefix_id = j.at("prefix_id").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.sentence_index = j.at("sentence_index").get<std::size_t>();
    r.verdict.label = ParseLabel(j.at("label").get<std::string>());
    r.verdict.evidence = j.at("evidence").get<std::vector<std::string>>();
    r.verdict.score = j.at("score").get<double>();
    r.by_length = j.value("by_length", false);
    if (r.verdict.verified() == r.verdict.evidence.empty()) {
      throw ValidationError("evidence must be empty exactly for NotEnoughInfo");
    }
    rows.push_back(std::move(r));
  });
  return rows;
}

}  // namespace veridecode
