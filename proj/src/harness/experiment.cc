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

#include "veridecode/harness/experiment.h"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <set>

#include "veridecode/decode/decoders.h"
#include "veridecode/errors.h"
#include "veridecode/harness/report.h"
#include "veridecode/lm/tokenizer.h"

namespace veridecode {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

SmoothingConfig SmoothingFromJson(const json& j) {
  const std::string kind = j.value("kind", "addk");
  if (kind == "addk") return SmoothingConfig::AddK(j.value("k", 1.0));
  if (kind == "interpolated") {
    return SmoothingConfig::Interpolated(j.at("lambdas").get<std::vector<double>>(),
                                         j.value("k", 1.0));
  }
  throw ConfigError("unknown smoothing kind '" + kind + "'");
}

CellOutput RunCell(const LanguageModel& model, const PrefixEntry& prefix,
                   const StrategyConfig& strategy, std::uint64_t seed,
                   const FactChecker* checker, std::uint64_t global_seed, std::size_t k) {
  CellOutput out;
  try {
    const std::vector<TokenId> prompt = model.vocabulary().Encode(Tokenize(prefix.prefix_text()));
    RngStream rng(DeriveStreamKey(global_seed, prefix.prefix_id, seed));
    Decoded decoded = Decode(model, prompt, strategy, rng);
    GenerationRecord record;
    record.prefix_id = prefix.prefix_id;
    record.strategy = strategy;
    record.seed = seed;
    record.tokens = std::move(decoded.tokens);
    record.token_logprobs = std::move(decoded.token_logprobs);
    out.generation = MakeGenerationRow(record, model.vocabulary(), decoded.blocking_dead_ends);
    if (checker) {
      out.checked =
          CheckGeneration(out.generation.tokens, prefix, ToSpec(strategy), seed, *checker, k);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::FromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(path + ": expected a JSON object");
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const char* key) -> std::string {
    if (!j.contains(key)) return {};
    fs::path p = j.at(key).get<std::string>();
    if (p.empty()) return {};
    return (p.is_absolute() ? p : base / p).lexically_normal().string();
  };

  ExperimentConfig cfg;
  try {
    cfg.model_path = resolve("model_path");
    cfg.corpus_path = resolve("corpus_path");
    cfg.prefix_path = resolve("prefix_path");
    cfg.kb_facts_path = resolve("kb_facts_path");
    cfg.kb_docs_path = resolve("kb_docs_path");
    cfg.output_dir = resolve("output_dir");
    cfg.lm_order = j.value("lm_order", cfg.lm_order);
    if (j.contains("smoothing")) cfg.smoothing = SmoothingFromJson(j.at("smoothing"));
    for (const auto& s : j.value("strategies", std::vector<std::string>{})) {
      cfg.strategies.push_back(ParseStrategy(s));
    }
    cfg.seeds = j.value("seeds", cfg.seeds);
    cfg.k = j.value("k", cfg.k);
    cfg.max_tokens = j.value("max_tokens", cfg.max_tokens);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.top_m = j.value("top_m", cfg.top_m);
    cfg.global_seed = j.value("global_seed", cfg.global_seed);
    cfg.workers = j.value("workers", cfg.workers);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return cfg;
}

void Validate(const ExperimentConfig& cfg) {
  if (cfg.seeds < 1) throw ConfigError("seeds must be >= 1");
  if (cfg.k < 1) throw ConfigError("evaluation window k must be >= 1");
  if (cfg.max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) throw ConfigError("tau must be in (0, 1]");
  if (cfg.top_m < 1) throw ConfigError("top_m must be >= 1");
  if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
  if (cfg.strategies.empty()) throw ConfigError("no strategies configured");
  std::set<std::string> specs;
  for (StrategyConfig s : cfg.strategies) {
    s.max_tokens = cfg.max_tokens;
    Validate(s);
    if (!specs.insert(ToSpec(s)).second) {
      throw ConfigError("strategy listed twice: " + ToSpec(s));
    }
  }
}

void ApplyEnvironment(ExperimentConfig& cfg) {
  const char* value = std::getenv(kSeedEnvVar);
  if (!value || !*value) return;
  std::string_view v(value);
  std::uint64_t seed = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(std::string(kSeedEnvVar) + " must be an unsigned integer");
  }
  cfg.global_seed = seed;
}

ExperimentInputs LoadInputs(const ExperimentConfig& cfg) {
  ExperimentInputs in;
  if (!cfg.model_path.empty()) {
    in.model = std::make_shared<NGramLM>(NGramLM::Load(cfg.model_path));
  } else if (!cfg.corpus_path.empty()) {
    in.model = std::make_shared<NGramLM>(
        TrainNGram(TokenizeFile(cfg.corpus_path), cfg.lm_order, cfg.smoothing, true));
  } else {
    throw ConfigError("either model_path or corpus_path is required");
  }
  if (cfg.prefix_path.empty()) throw ConfigError("prefix_path is required");
  in.prefixes = LoadPrefixes(cfg.prefix_path);
  if (cfg.kb_facts_path.empty() || cfg.kb_docs_path.empty()) {
    throw ConfigError("kb_facts_path and kb_docs_path are required");
  }
  in.kb = std::make_shared<KnowledgeBase>(
      KnowledgeBase::LoadJsonl(cfg.kb_facts_path, cfg.kb_docs_path));
  return in;
}

std::vector<Cell> EnumerateCells(std::size_t strategies, std::size_t prefixes, int seeds) {
  std::vector<Cell> cells;
  cells.reserve(strategies * prefixes * static_cast<std::size_t>(std::max(seeds, 0)));
  for (std::size_t s = 0; s < strategies; ++s) {
    for (std::size_t p = 0; p < prefixes; ++p) {
      for (int r = 0; r < seeds; ++r) cells.push_back({s, p, static_cast<std::uint64_t>(r)});
    }
  }
  return cells;
}

std::vector<CellOutput> RunCells(const LanguageModel& model, std::span<const PrefixEntry> prefixes,
                                 std::span<const StrategyConfig> strategies,
                                 std::span<const Cell> cells, const FactChecker* checker,
                                 std::uint64_t global_seed, std::size_t k, Execution execution,
                                 int workers) {
  std::vector<CellOutput> out(cells.size());
  const long n = static_cast<long>(cells.size());
  if (execution == Execution::kSerial) {
    for (long i = 0; i < n; ++i) {
      const Cell& c = cells[i];
      out[i] = RunCell(model, prefixes[c.prefix], strategies[c.strategy], c.seed, checker,
                       global_seed, k);
    }
    return out;
  }
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    const Cell& c = cells[i];
    out[i] = RunCell(model, prefixes[c.prefix], strategies[c.strategy], c.seed, checker,
                     global_seed, k);
  }
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg, const ExperimentInputs& inputs,
                               Execution execution) {
  Validate(cfg);
  if (!inputs.model || !inputs.kb) throw ConfigError("experiment inputs are incomplete");
  std::vector<StrategyConfig> strategies = cfg.strategies;
  for (auto& s : strategies) s.max_tokens = cfg.max_tokens;

  OracleFactChecker checker(*inputs.kb, {cfg.tau, cfg.top_m});
  const std::vector<Cell> cells =
      EnumerateCells(strategies.size(), inputs.prefixes.size(), cfg.seeds);
  std::vector<CellOutput> outputs = RunCells(*inputs.model, inputs.prefixes, strategies, cells,
                                             &checker, cfg.global_seed, cfg.k, execution,
                                             cfg.workers);

  ExperimentResult result;
  std::vector<std::size_t> failed(strategies.size(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellOutput& o = outputs[i];
    const Cell& c = cells[i];
    if (!o.error.empty()) {
      ++failed[c.strategy];
      result.diagnostics.push_back({ToSpec(strategies[c.strategy]),
                                    inputs.prefixes[c.prefix].prefix_id, c.seed, o.error});
      continue;
    }
    result.generations.push_back(std::move(o.generation));
    std::move(o.checked.sentences.begin(), o.checked.sentences.end(),
              std::back_inserter(result.sentences));
    std::move(o.checked.verdicts.begin(), o.checked.verdicts.end(),
              std::back_inserter(result.verdicts));
  }

  HumanReference human = EvaluateHumanReference(inputs.prefixes, checker, cfg.k);
  result.rows = human.row;
  std::vector<StrategyRow> rows =
      Aggregate(result.generations, result.verdicts, inputs.prefixes, cfg.k);
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const std::string spec = ToSpec(strategies[s]);
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const StrategyRow& r) { return r.strategy == spec; });
    StrategyRow row;
    if (it != rows.end()) {
      row = *it;
    } else {
      row.strategy = spec;
      row.name = strategies[s].Describe();
    }
    row.failed_cells = failed[s];
    result.rows.push_back(std::move(row));
  }
  std::move(human.sentences.begin(), human.sentences.end(), std::back_inserter(result.sentences));
  std::move(human.verdicts.begin(), human.verdicts.end(), std::back_inserter(result.verdicts));
  return result;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  Validate(cfg);
  ExperimentResult result = RunExperiment(cfg, LoadInputs(cfg));
  if (!cfg.output_dir.empty()) WriteArtifacts(result, cfg.output_dir);
  return result;
}

void WriteArtifacts(const ExperimentResult& result, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const fs::path base(dir);
  WriteGenerations((base / "generations.jsonl").string(), result.generations);
  WriteSentences((base / "sentences.jsonl").string(), result.sentences);
  WriteVerdicts((base / "verdicts.jsonl").string(), result.verdicts);
  WriteReport(result.rows, (base / "metrics.csv").string());
  const fs::path diag = base / "diagnostics.txt";
  if (result.diagnostics.empty()) {
    fs::remove(diag, ec);
    return;
  }
  std::ofstream out(diag, std::ios::binary);
  if (!out) throw IoError("cannot write " + diag.string());
  for (const CellDiagnostic& d : result.diagnostics) {
    out << d.strategy << '\t' << d.prefix_id << '\t' << d.seed << '\t' << d.message << '\n';
  }
}

}  // namespace veridecode
