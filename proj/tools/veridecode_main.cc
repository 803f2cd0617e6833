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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "veridecode/errors.h"
#include "veridecode/harness/analysis.h"
#include "veridecode/harness/experiment.h"
#include "veridecode/harness/report.h"
#include "veridecode/harness/sweep.h"
#include "veridecode/lm/tokenizer.h"

namespace {

using namespace veridecode;
namespace fs = std::filesystem;

constexpr int kExitCellFailures = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// "addk:K" or "interp:l0,l1,...,l{n-1}" (unigram weight first).
SmoothingConfig ParseSmoothing(const std::string& text, double unigram_k) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "addk") return SmoothingConfig::AddK(rest.empty() ? 1.0 : std::stod(rest));
    if (kind == "interp") {
      std::vector<double> lambdas;
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto comma = rest.find(',', start);
        lambdas.push_back(std::stod(rest.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return SmoothingConfig::Interpolated(lambdas, unigram_k);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad smoothing spec '" + text + "'");
  }
  throw ConfigError("unknown smoothing '" + text + "' (use addk:K or interp:l0,l1,..)");
}

// Flags that override fields of an ExperimentConfig loaded from --config.
struct Overrides {
  std::string config;
  std::optional<std::string> model, corpus, prefixes, kb_facts, kb_docs, smoothing, out_dir;
  std::optional<int> order, seeds, max_tokens, top_m, workers;
  std::optional<std::size_t> k;
  std::optional<double> tau, unigram_k;
  std::optional<std::uint64_t> global_seed;
  std::vector<std::string> strategies;

  void AddModel(CLI::App* app) {
    app->add_option("--model", model, "Saved model file");
    app->add_option("--corpus", corpus, "Training corpus (used when no --model)");
    app->add_option("--order", order, "n-gram order when training");
    app->add_option("--smoothing", smoothing, "addk:K or interp:l0,l1,..");
    app->add_option("--unigram-k", unigram_k, "Add-k constant of the interpolated unigram");
  }
  void AddRun(CLI::App* app) {
    app->add_option("--config", config, "Experiment config (JSON)");
    AddModel(app);
    app->add_option("--prefixes", prefixes, "Prefix file (JSON lines)");
    app->add_option("--strategy", strategies,
                    "Strategy spec, e.g. topk:k=2 or beam:beam=15,block=20; "
                    "'defaults' adds the tuned set");
    app->add_option("--seeds", seeds, "Replicates per prefix and strategy");
    app->add_option("--max-tokens", max_tokens, "Tokens per generation");
    app->add_option("--global-seed", global_seed, "Global RNG seed");
    app->add_option("--workers", workers, "OpenMP threads (0 = runtime default)");
  }
  void AddCheck(CLI::App* app) {
    app->add_option("--kb-facts", kb_facts, "Fact statements (JSON lines)");
    app->add_option("--kb-docs", kb_docs, "Knowledge-base documents (JSON lines)");
    app->add_option("--k", k, "Sentences checked per generation");
    app->add_option("--tau", tau, "Jaccard threshold for a verdict");
    app->add_option("--top-m", top_m, "Documents retrieved per sentence");
  }

  ExperimentConfig Resolve() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : ExperimentConfig::FromJsonFile(config);
    ApplyEnvironment(cfg);
    if (model) cfg.model_path = *model;
    if (corpus) cfg.corpus_path = *corpus;
    if (prefixes) cfg.prefix_path = *prefixes;
    if (kb_facts) cfg.kb_facts_path = *kb_facts;
    if (kb_docs) cfg.kb_docs_path = *kb_docs;
    if (out_dir) cfg.output_dir = *out_dir;
    if (order) cfg.lm_order = *order;
    if (smoothing) cfg.smoothing = ParseSmoothing(*smoothing, unigram_k.value_or(1.0));
    if (seeds) cfg.seeds = *seeds;
    if (max_tokens) cfg.max_tokens = *max_tokens;
    if (top_m) cfg.top_m = *top_m;
    if (workers) cfg.workers = *workers;
    if (k) cfg.k = *k;
    if (tau) cfg.tau = *tau;
    if (global_seed) cfg.global_seed = *global_seed;
    if (!strategies.empty()) {
      cfg.strategies.clear();
      for (const std::string& s : strategies) {
        if (s == "defaults") {
          for (const auto& d : DefaultStrategies()) cfg.strategies.push_back(d);
        } else {
          cfg.strategies.push_back(ParseStrategy(s));
        }
      }
    }
    return cfg;
  }
};

std::shared_ptr<const NGramLM> LoadModel(const ExperimentConfig& cfg) {
  if (!cfg.model_path.empty()) return std::make_shared<NGramLM>(NGramLM::Load(cfg.model_path));
  if (cfg.corpus_path.empty()) throw ConfigError("--model or --corpus is required");
  return std::make_shared<NGramLM>(
      TrainNGram(TokenizeFile(cfg.corpus_path), cfg.lm_order, cfg.smoothing, true));
}

KnowledgeBase LoadKb(const ExperimentConfig& cfg) {
  if (cfg.kb_facts_path.empty() || cfg.kb_docs_path.empty()) {
    throw ConfigError("--kb-facts and --kb-docs are required");
  }
  return KnowledgeBase::LoadJsonl(cfg.kb_facts_path, cfg.kb_docs_path);
}

std::string Required(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
  return value;
}

void PrintDiagnostics(const std::vector<CellDiagnostic>& diagnostics) {
  for (const CellDiagnostic& d : diagnostics) {
    std::cerr << "cell failed: " << d.strategy << " prefix=" << d.prefix_id << " seed=" << d.seed
              << ": " << d.message << '\n';
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

int Train(const Overrides& o, const std::string& out) {
  ExperimentConfig cfg = o.Resolve();
  cfg.model_path.clear();
  auto model = LoadModel(cfg);
  model->Save(out);
  std::cout << "trained order-" << model->order() << " model, |V|=" << model->vocab_size()
            << " -> " << out << '\n';
  return 0;
}

int Generate(const Overrides& o, const std::string& out) {
  ExperimentConfig cfg = o.Resolve();
  auto model = LoadModel(cfg);
  auto prefixes = LoadPrefixes(Required(cfg.prefix_path, "--prefixes"));
  std::vector<StrategyConfig> strategies = cfg.strategies;
  for (auto& s : strategies) s.max_tokens = cfg.max_tokens;
  Validate(cfg);
  auto cells = EnumerateCells(strategies.size(), prefixes.size(), cfg.seeds);
  auto outputs = RunCells(*model, prefixes, strategies, cells, nullptr, cfg.global_seed, cfg.k,
                          Execution::kParallel, cfg.workers);
  std::vector<GenerationRow> rows;
  std::vector<CellDiagnostic> diagnostics;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (outputs[i].error.empty()) {
      rows.push_back(std::move(outputs[i].generation));
    } else {
      diagnostics.push_back({ToSpec(strategies[cells[i].strategy]),
                             prefixes[cells[i].prefix].prefix_id, cells[i].seed,
                             outputs[i].error});
    }
  }
  WriteGenerations(out, rows);
  PrintDiagnostics(diagnostics);
  std::cout << rows.size() << " generations -> " << out << '\n';
  return diagnostics.empty() ? 0 : kExitCellFailures;
}

int Check(const Overrides& o, const std::string& generations, const std::string& out_dir) {
  ExperimentConfig cfg = o.Resolve();
  auto gens = ReadGenerations(generations);
  auto prefixes = LoadPrefixes(Required(cfg.prefix_path, "--prefixes"));
  KnowledgeBase kb = LoadKb(cfg);
  OracleFactChecker checker(kb, {cfg.tau, cfg.top_m});
  CheckedGeneration checked = CheckGenerations(gens, prefixes, checker, cfg.k);
  fs::create_directories(out_dir);
  WriteSentences((fs::path(out_dir) / "sentences.jsonl").string(), checked.sentences);
  WriteVerdicts((fs::path(out_dir) / "verdicts.jsonl").string(), checked.verdicts);
  std::cout << checked.verdicts.size() << " verdicts -> " << out_dir << '\n';
  return 0;
}

int Evaluate(const Overrides& o, const std::string& generations, const std::string& verdicts,
             const std::string& out) {
  ExperimentConfig cfg = o.Resolve();
  auto gens = ReadGenerations(generations);
  auto rows_in = ReadVerdicts(verdicts);
  auto prefixes = LoadPrefixes(Required(cfg.prefix_path, "--prefixes"));
  std::vector<StrategyRow> rows;
  if (!cfg.kb_facts_path.empty() && !cfg.kb_docs_path.empty()) {
    KnowledgeBase kb = LoadKb(cfg);
    OracleFactChecker checker(kb, {cfg.tau, cfg.top_m});
    rows = EvaluateHumanReference(prefixes, checker, cfg.k).row;
  }
  for (auto& r : Aggregate(gens, rows_in, prefixes, cfg.k)) rows.push_back(std::move(r));
  if (rows.empty()) throw InputError("nothing to evaluate");
  if (const fs::path parent = fs::path(out).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  WriteReport(rows, out);
  std::cout << FormatTable(rows);
  return 0;
}

int RunSweep(const Overrides& o, const std::vector<std::string>& grid, const std::string& objective) {
  ExperimentConfig cfg = o.Resolve();
  cfg.strategies = {ParseStrategy("greedy")};  // replaced by the grid
  auto inputs = LoadInputs(cfg);
  SweepResult result = Sweep(cfg, inputs, ExpandGrid(grid), ParseObjective(objective));
  const std::string table = FormatSweepTable(result, cfg.k);
  std::cout << table;
  if (result.best) {
    std::cout << "best: " << ToSpec(result.points[*result.best].config) << '\n';
  } else {
    std::cout << "best: none (every grid point failed)\n";
  }
  if (!cfg.output_dir.empty()) {
    WriteArtifacts(result.experiment, cfg.output_dir);
    WriteText(fs::path(cfg.output_dir) / "sweep.txt", table);
  }
  PrintDiagnostics(result.experiment.diagnostics);
  return result.experiment.ok() ? 0 : kExitCellFailures;
}

int Report(const Overrides& o, const std::string& metrics, const std::string& generations,
           const std::string& verdicts, const std::string& features_out) {
  if (!metrics.empty()) std::cout << FormatTable(ReadReportCsv(metrics));
  if (generations.empty() && verdicts.empty()) {
    if (metrics.empty()) throw ConfigError("give --metrics or --generations with --verdicts");
    return 0;
  }
  ExperimentConfig cfg = o.Resolve();
  auto gens = ReadGenerations(Required(generations, "--generations"));
  auto rows = ReadVerdicts(Required(verdicts, "--verdicts"));
  auto prefixes = LoadPrefixes(Required(cfg.prefix_path, "--prefixes"));
  KnowledgeBase kb = LoadKb(cfg);
  TfidfIndex index(kb.documents());
  auto features = ExtractFeatures(gens, rows, prefixes, kb, index, cfg.k);
  std::cout << FormatCorrelations(CorrelateWithSupport(features));
  if (!features_out.empty()) WriteText(features_out, FormatFeaturesCsv(features));
  return 0;
}

int Run(const Overrides& o) {
  ExperimentConfig cfg = o.Resolve();
  ExperimentResult result = RunExperiment(cfg);
  std::cout << FormatTable(result.rows);
  if (!cfg.output_dir.empty()) std::cout << "artifacts -> " << cfg.output_dir << '\n';
  PrintDiagnostics(result.diagnostics);
  return result.ok() ? 0 : kExitCellFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoding strategies versus verifiability on an n-gram language model"};
  app.require_subcommand(1);
  Overrides o;
  std::string out, generations, verdicts, metrics, features_out, objective = "uspg";
  std::vector<std::string> grid;
  std::function<int()> action;

  auto* train = app.add_subcommand("train", "Train an n-gram model from a corpus");
  o.AddModel(train);
  train->add_option("--out", out, "Model file")->required();
  train->callback([&] { action = [&] { return Train(o, out); }; });

  auto* generate = app.add_subcommand("generate", "Decode every prefix with every strategy");
  o.AddRun(generate);
  o.AddCheck(generate);
  generate->add_option("--out", out, "Generations file (JSON lines)")->required();
  generate->callback([&] { action = [&] { return Generate(o, out); }; });

  auto* check = app.add_subcommand("check", "Fact-check the first k sentences of generations");
  check->add_option("--config", o.config, "Experiment config (JSON)");
  check->add_option("--generations", generations, "Generations file")->required();
  check->add_option("--prefixes", o.prefixes, "Prefix file");
  o.AddCheck(check);
  check->add_option("--out-dir", out, "Directory for sentences.jsonl and verdicts.jsonl")
      ->required();
  check->callback([&] { action = [&] { return Check(o, generations, out); }; });

  auto* evaluate = app.add_subcommand("evaluate", "Aggregate verdicts into metrics");
  evaluate->add_option("--config", o.config, "Experiment config (JSON)");
  evaluate->add_option("--generations", generations, "Generations file")->required();
  evaluate->add_option("--verdicts", verdicts, "Verdicts file")->required();
  evaluate->add_option("--prefixes", o.prefixes, "Prefix file");
  o.AddCheck(evaluate);
  evaluate->add_option("--out", out, "Metrics CSV (a .txt table is written next to it)")
      ->required();
  evaluate->callback([&] { action = [&] { return Evaluate(o, generations, verdicts, out); }; });

  auto* sweep = app.add_subcommand("sweep", "Grid search over strategy parameters");
  o.AddRun(sweep);
  o.AddCheck(sweep);
  sweep->add_option("--grid", grid, "Grid spec, alternatives split by '|', e.g. "
                                    "delayed:k=100,beam=6,delay=1|2|4")
      ->required();
  sweep->add_option("--objective", objective, "spg, spv, uspg, uspv or distinct_4grams");
  sweep->add_option("--out-dir", o.out_dir, "Artifact directory");
  sweep->callback([&] { action = [&] { return RunSweep(o, grid, objective); }; });

  auto* report = app.add_subcommand("report", "Print metric tables and feature correlations");
  report->add_option("--config", o.config, "Experiment config (JSON)");
  report->add_option("--metrics", metrics, "Metrics CSV to print as a table");
  report->add_option("--generations", generations, "Generations file");
  report->add_option("--verdicts", verdicts, "Verdicts file");
  report->add_option("--prefixes", o.prefixes, "Prefix file");
  o.AddCheck(report);
  report->add_option("--features-out", features_out, "Per-sentence feature CSV");
  report->callback([&] {
    action = [&] { return Report(o, metrics, generations, verdicts, features_out); };
  });

  auto* run = app.add_subcommand("run", "Full pipeline: generate, check, evaluate, write");
  o.AddRun(run);
  o.AddCheck(run);
  run->add_option("--out-dir", o.out_dir, "Artifact directory");
  run->callback([&] { action = [&] { return Run(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
