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

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "veridecode/errors.h"
#include "veridecode/harness/analysis.h"
#include "veridecode/harness/experiment.h"
#include "veridecode/harness/pipeline.h"
#include "veridecode/harness/report.h"
#include "veridecode/harness/sweep.h"

namespace veridecode {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("veridecode_h_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string Write(const std::string& name, const std::string& body) const {
    std::ofstream(path_ / name, std::ios::binary) << body;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

const char* const kCities[] = {"harbor", "mountain", "river", "desert", "forest"};
const char* const kYears[] = {"1820", "1750", "1901", "1688", "1844"};

// Ten small pages, each with a reference continuation and a KB document.
struct MiniWorld {
  TempDir dir;
  ExperimentConfig cfg;

  MiniWorld() {
    std::ostringstream corpus, prefixes, facts, docs;
    for (int i = 0; i < 10; ++i) {
      const std::string title = "Place" + std::to_string(i);
      const std::string kind = kCities[i % 5];
      const std::string year = kYears[i % 5];
      const std::string first = title + " is a " + kind + " town.";
      const std::string rest = title + " was founded in " + year + ". It has a famous " + kind +
                               " market. The town hosts a fair every spring.";
      corpus << title << ". " << first << ' ' << rest << '\n';
      nlohmann::ordered_json p{{"id", "p" + std::to_string(i)},
                               {"title", title},
                               {"first_sentence", first},
                               {"reference", rest},
                               {"doc_id", "d" + std::to_string(i)}};
      prefixes << p.dump() << '\n';
      docs << nlohmann::json{{"doc_id", "d" + std::to_string(i)}, {"text", first + " " + rest}}
                  .dump()
           << '\n';
      auto fact = [&](const std::string& id, const std::string& text, const char* pol) {
        facts << nlohmann::json{{"fact_id", id},
                                {"text", text},
                                {"polarity", pol},
                                {"source_doc_id", "d" + std::to_string(i)}}
                     .dump()
              << '\n';
      };
      fact("f" + std::to_string(i) + "a", title + " was founded in " + year + ".", "asserts");
      fact("f" + std::to_string(i) + "b", title + " was founded in " + kYears[(i + 1) % 5] + ".",
           "contradicts");
      fact("f" + std::to_string(i) + "c", title + " has a famous " + kind + " market.", "asserts");
    }
    for (int w = 0; w < 120; ++w) corpus << "filler" << w << ' ';
    corpus << ".\n";
    cfg.corpus_path = dir.Write("corpus.txt", corpus.str());
    cfg.prefix_path = dir.Write("prefixes.jsonl", prefixes.str());
    cfg.kb_facts_path = dir.Write("facts.jsonl", facts.str());
    cfg.kb_docs_path = dir.Write("docs.jsonl", docs.str());
    cfg.lm_order = 3;
    cfg.smoothing = SmoothingConfig::Interpolated({0.05, 0.15, 0.8}, 0.1);
    cfg.max_tokens = 48;
    cfg.strategies = {ParseStrategy("topk:k=2"), ParseStrategy("beam:beam=3")};
  }
};

TEST(Prefixes, LoadsEntries) {
  TempDir dir;
  auto path = dir.Write(
      "p.jsonl",
      "{\"id\":\"whitey\",\"title\":\"Whitey Bulger\",\"first_sentence\":\"James Joseph Whitey "
      "Bulger Jr. ... was an Irish-American organized crime boss ...\"}\n\n");
  auto entries = LoadPrefixes(path);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].prefix_text().rfind("Whitey Bulger. James Joseph", 0), 0u);
  EXPECT_TRUE(LoadPrefixes(dir.Write("empty.jsonl", "")).empty());
}

TEST(Prefixes, Errors) {
  TempDir dir;
  const std::string line = "{\"id\":\"a\",\"title\":\"T\",\"first_sentence\":\"S.\"}\n";
  EXPECT_THROW(LoadPrefixes(dir.Write("dup.jsonl", line + line)), ValidationError);
  try {
    LoadPrefixes(dir.Write("bad.jsonl", line + "\n{nope\n"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(LoadPrefixes(dir.Write("noid.jsonl", "{\"title\":\"T\",\"first_sentence\":\"S\"}\n")),
               ParseError);
  EXPECT_THROW(LoadPrefixes((dir.path() / "missing").string()), IoError);
}

TEST(Strategy, SpecRoundTripAndDefaults) {
  auto defaults = DefaultStrategies();
  ASSERT_EQ(defaults.size(), 8u);
  std::map<std::string, StrategyConfig> by_name;
  for (const auto& s : defaults) {
    EXPECT_TRUE(by_name.emplace(s.Name(), s).second) << s.Name();
    EXPECT_EQ(ParseStrategy(ToSpec(s)), s);
    EXPECT_EQ(s.max_tokens, 256);
  }
  for (const char* n : {"greedy", "top-k", "top-p", "BS", "GroupBS", "SiblingBS", "DelayedBS",
                        "BS_b"}) {
    EXPECT_TRUE(by_name.contains(n)) << n;
  }
  EXPECT_EQ(std::get<TopK>(by_name.at("top-k").strategy).k, 2);
  EXPECT_DOUBLE_EQ(std::get<TopP>(by_name.at("top-p").strategy).p, 0.4);
  EXPECT_EQ(std::get<Beam>(by_name.at("BS").strategy).beam_size, 15);
  EXPECT_EQ(std::get<GroupBeam>(by_name.at("GroupBS").strategy).groups, 2);
  EXPECT_DOUBLE_EQ(std::get<GroupBeam>(by_name.at("GroupBS").strategy).penalty, 0.2);
  EXPECT_DOUBLE_EQ(std::get<SiblingBeam>(by_name.at("SiblingBS").strategy).penalty, 0.1);
  const auto& d = std::get<DelayedBeam>(by_name.at("DelayedBS").strategy);
  EXPECT_EQ(d.top_k, 100);
  EXPECT_EQ(d.beam_size, 6);
  EXPECT_EQ(d.delay, 1);
  const auto& blocked = by_name.at("BS_b");
  EXPECT_EQ(blocked.blocking_order, 20);
  EXPECT_EQ(std::get<Beam>(blocked.strategy).beam_size, 15);
  EXPECT_EQ(blocked.Describe(), "BS_b(beam=15,block=20)");
}

TEST(Strategy, ValidationErrors) {
  for (const char* bad : {"topk:k=0", "topp:p=0", "topp:p=1.5", "beam:beam=0",
                          "group:beam=5,groups=2", "group:penalty=-1", "sibling:penalty=-0.1",
                          "delayed:delay=-1", "beam:block=1", "beam:max_tokens=0", "nosuch",
                          "beam:width=3", "topk:k=two"}) {
    EXPECT_THROW(ParseStrategy(bad), ConfigError) << bad;
  }
  EXPECT_TRUE(ParseStrategy("delayed:delay=0").IsStochastic() == false);
  EXPECT_TRUE(ParseStrategy("topp:p=1").IsStochastic());
}

TEST(Grid, Expansion) {
  auto delays = ExpandGrid("delayed:k=100,beam=6,delay=1|2|4|8|16");
  ASSERT_EQ(delays.size(), 5u);
  EXPECT_EQ(std::get<DelayedBeam>(delays[3].strategy).delay, 8);
  auto product = ExpandGrid("group:beam=4|8,groups=2,penalty=0|0.5");
  ASSERT_EQ(product.size(), 4u);
  EXPECT_EQ(ToSpec(product[1]), ToSpec(ParseStrategy("group:beam=4,groups=2,penalty=0.5")));
  EXPECT_EQ(ExpandGrid("topk:k=2|2").size(), 1u);
  EXPECT_EQ(ExpandGrid("greedy").size(), 1u);
  EXPECT_EQ(ExpandGrid(std::vector<std::string>{"topk:k=2", "topk:k=2|3"}).size(), 2u);
  EXPECT_THROW(ExpandGrid("topk:k"), ConfigError);
  EXPECT_EQ(ParseObjective("uspg"), Objective::kUspg);
  EXPECT_THROW(ParseObjective("fun"), ConfigError);
}

TEST(Config, ValidationAndEnvironment) {
  ExperimentConfig cfg;
  cfg.strategies = {ParseStrategy("greedy")};
  EXPECT_NO_THROW(Validate(cfg));
  auto bad = cfg;
  bad.seeds = 0;
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = cfg;
  bad.k = 0;
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = cfg;
  bad.strategies.push_back(ParseStrategy("greedy"));
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = cfg;
  bad.strategies.clear();
  EXPECT_THROW(Validate(bad), ConfigError);

  ::setenv(kSeedEnvVar, "17", 1);
  ApplyEnvironment(cfg);
  EXPECT_EQ(cfg.global_seed, 17u);
  ::setenv(kSeedEnvVar, "x1", 1);
  EXPECT_THROW(ApplyEnvironment(cfg), ConfigError);
  ::unsetenv(kSeedEnvVar);
  ApplyEnvironment(cfg);
  EXPECT_EQ(cfg.global_seed, 17u);
}

TEST(Config, JsonFileResolvesRelativePaths) {
  TempDir dir;
  fs::create_directories(dir.path() / "sub");
  auto path = dir.Write("sub/exp.json", R"({
    "corpus_path": "../corpus.txt", "prefix_path": "p.jsonl",
    "kb_facts_path": "/abs/f.jsonl", "kb_docs_path": "d.jsonl",
    "lm_order": 5, "smoothing": {"kind": "interpolated", "lambdas": [0.1, 0.2, 0.3, 0.2, 0.2], "k": 0.5},
    "strategies": ["topk:k=3", "beam:beam=4,block=3"], "seeds": 2, "k": 4,
    "max_tokens": 64, "tau": 0.75, "top_m": 3, "global_seed": 9, "workers": 2,
    "output_dir": "out"})");
  auto cfg = ExperimentConfig::FromJsonFile(path);
  EXPECT_EQ(cfg.corpus_path, (dir.path() / "corpus.txt").lexically_normal().string());
  EXPECT_EQ(cfg.prefix_path, (dir.path() / "sub" / "p.jsonl").string());
  EXPECT_EQ(cfg.kb_facts_path, "/abs/f.jsonl");
  EXPECT_EQ(cfg.lm_order, 5);
  EXPECT_EQ(cfg.smoothing.kind, SmoothingConfig::Kind::kInterpolated);
  EXPECT_DOUBLE_EQ(cfg.smoothing.add_k, 0.5);
  ASSERT_EQ(cfg.strategies.size(), 2u);
  EXPECT_EQ(cfg.strategies[1].blocking_order, 3);
  EXPECT_EQ(cfg.seeds, 2);
  EXPECT_EQ(cfg.k, 4u);
  EXPECT_EQ(cfg.max_tokens, 64);
  EXPECT_DOUBLE_EQ(cfg.tau, 0.75);
  EXPECT_EQ(cfg.top_m, 3);
  EXPECT_EQ(cfg.global_seed, 9u);
  EXPECT_EQ(cfg.workers, 2);
  EXPECT_THROW(ExperimentConfig::FromJsonFile(dir.Write("bad.json", "{")), ParseError);
  EXPECT_THROW(ExperimentConfig::FromJsonFile(dir.Write("bad2.json", R"({"seeds": "x"})")),
               ParseError);
  EXPECT_THROW(ExperimentConfig::FromJsonFile((dir.path() / "none.json").string()), IoError);
}

TEST(Experiment, CountsRowsAndConservesSentences) {
  MiniWorld w;
  auto inputs = LoadInputs(w.cfg);
  ASSERT_EQ(inputs.prefixes.size(), 10u);
  ExperimentResult r = RunExperiment(w.cfg, inputs);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.generations.size(), 60u);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].strategy, "human");
  EXPECT_EQ(r.rows[1].generations, 30u);
  EXPECT_EQ(r.rows[2].name, "BS(beam=3,max_tokens=48)");
  for (const auto& g : r.generations) {
    EXPECT_EQ(g.tokens.size(), 48u);
    EXPECT_EQ(g.token_logprobs.size(), 48u);
  }
  // One verdict per sentence row, keyed identically.
  ASSERT_EQ(r.sentences.size(), r.verdicts.size());
  std::size_t verified = 0, nei = 0;
  for (std::size_t i = 0; i < r.sentences.size(); ++i) {
    EXPECT_EQ(r.sentences[i].prefix_id, r.verdicts[i].prefix_id);
    EXPECT_EQ(r.sentences[i].sentence_index, r.verdicts[i].sentence_index);
    EXPECT_EQ(r.sentences[i].verifiable, !r.verdicts[i].by_length);
    EXPECT_LT(r.sentences[i].sentence_index, w.cfg.k);
    (r.verdicts[i].verdict.verified() ? verified : nei) += 1;
  }
  EXPECT_EQ(verified + nei, r.sentences.size());
  EXPECT_GT(verified, 0u);
  // Human reference copies the page text, so it is fully supported.
  EXPECT_DOUBLE_EQ(r.rows[0].report.fourgram_proportion, 1.0);
  EXPECT_GT(r.rows[0].report.spv, 0.9);
}

TEST(Experiment, DeterministicStrategiesRepeatAcrossSeeds) {
  MiniWorld w;
  auto inputs = LoadInputs(w.cfg);
  ExperimentResult r = RunExperiment(w.cfg, inputs);
  std::map<std::string, std::vector<std::string>> beam_by_prefix;
  for (const auto& g : r.generations) {
    if (g.strategy.Name() != "BS") continue;
    if (g.seed == 0) {
      beam_by_prefix[g.prefix_id] = g.tokens;
    } else {
      EXPECT_EQ(g.tokens, beam_by_prefix.at(g.prefix_id));
    }
  }
  EXPECT_EQ(beam_by_prefix.size(), 10u);
}

TEST(Experiment, SerialAndParallelAgreeAndRerunsAreByteIdentical) {
  MiniWorld w;
  w.cfg.strategies.push_back(ParseStrategy("delayed:k=5,beam=2,delay=2"));
  w.cfg.workers = 3;
  auto inputs = LoadInputs(w.cfg);
  TempDir a, b, c;
  WriteArtifacts(RunExperiment(w.cfg, inputs, Execution::kParallel), a.path().string());
  WriteArtifacts(RunExperiment(w.cfg, inputs, Execution::kParallel), b.path().string());
  WriteArtifacts(RunExperiment(w.cfg, inputs, Execution::kSerial), c.path().string());
  for (const char* f : {"generations.jsonl", "sentences.jsonl", "verdicts.jsonl", "metrics.csv",
                        "metrics.txt"}) {
    const std::string first = Slurp(a.path() / f);
    EXPECT_FALSE(first.empty()) << f;
    EXPECT_EQ(first, Slurp(b.path() / f)) << f;
    EXPECT_EQ(first, Slurp(c.path() / f)) << f;
  }
  EXPECT_FALSE(fs::exists(a.path() / "diagnostics.txt"));
}

TEST(Experiment, GlobalSeedChangesSampledOutput) {
  MiniWorld w;
  auto inputs = LoadInputs(w.cfg);
  auto r1 = RunExperiment(w.cfg, inputs);
  w.cfg.global_seed = 1;
  auto r2 = RunExperiment(w.cfg, inputs);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < r1.generations.size(); ++i) {
    differ += r1.generations[i].tokens != r2.generations[i].tokens;
  }
  EXPECT_GT(differ, 0u);
}

TEST(Experiment, FailedCellsAreRecordedAndOthersProceed) {
  MiniWorld w;
  w.cfg.strategies.push_back(ParseStrategy("topk:k=5000"));
  auto inputs = LoadInputs(w.cfg);
  ExperimentResult r = RunExperiment(w.cfg, inputs);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.size(), 30u);
  EXPECT_EQ(r.generations.size(), 60u);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[3].failed_cells, 30u);
  EXPECT_EQ(r.rows[3].generations, 0u);
  TempDir out;
  WriteArtifacts(r, out.path().string());
  EXPECT_TRUE(fs::exists(out.path() / "diagnostics.txt"));
}

TEST(Artifacts, RoundTrip) {
  MiniWorld w;
  w.cfg.seeds = 1;
  auto inputs = LoadInputs(w.cfg);
  ExperimentResult r = RunExperiment(w.cfg, inputs);
  TempDir out;
  WriteArtifacts(r, out.path().string());
  auto gens = ReadGenerations((out.path() / "generations.jsonl").string());
  ASSERT_EQ(gens.size(), r.generations.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    EXPECT_EQ(gens[i].tokens, r.generations[i].tokens);
    EXPECT_EQ(gens[i].token_logprobs, r.generations[i].token_logprobs);
    EXPECT_EQ(gens[i].strategy, r.generations[i].strategy);
    EXPECT_EQ(gens[i].text, r.generations[i].text);
  }
  auto verdicts = ReadVerdicts((out.path() / "verdicts.jsonl").string());
  ASSERT_EQ(verdicts.size(), r.verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    EXPECT_EQ(verdicts[i].verdict, r.verdicts[i].verdict);
    EXPECT_EQ(verdicts[i].by_length, r.verdicts[i].by_length);
  }
  // Re-aggregating the persisted files reproduces the metric rows.
  auto rows = Aggregate(gens, verdicts, inputs.prefixes, w.cfg.k);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].report.spg, r.rows[1].report.spg);
  EXPECT_EQ(rows[1].report.uspv, r.rows[2].report.uspv);
  EXPECT_EQ(rows[1].report.distinct_4grams, r.rows[2].report.distinct_4grams);
}

TEST(Artifacts, VerdictReaderRejectsInconsistentEvidence) {
  TempDir dir;
  auto path = dir.Write("v.jsonl",
                        "{\"prefix_id\":\"p\",\"strategy\":\"greedy\",\"seed\":0,"
                        "\"sentence_index\":0,\"label\":\"Supported\",\"evidence\":[],"
                        "\"score\":1.0,\"by_length\":false}\n");
  EXPECT_THROW(ReadVerdicts(path), ParseError);
}

StrategyRow Row(std::string spec, double spg) {
  StrategyRow r;
  r.strategy = spec;
  r.name = spec;
  r.report.spg = spg;
  r.report.spv = 0.9303;
  r.report.distinct_4grams = 222.48;
  r.report.fourgram_proportion = 1.0;
  r.generations = 3;
  return r;
}

TEST(Report, CsvAndTable) {
  std::vector<StrategyRow> one{Row("topk:k=2", 0.25)};
  const std::string csv = FormatCsv(one);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "strategy,name,generations,failed_cells,prefixes,distinct_4grams,"
            "fourgram_proportion,spg,spv,uspg,uspv,spv_skipped,uspv_skipped,proportion_skipped");
  std::vector<StrategyRow> rows{Row("human", 0.3656), Row("delayed:k=100,beam=6,delay=1", 0.1)};
  const std::string table = FormatTable(rows);
  EXPECT_NE(table.find("222.48"), std::string::npos);
  EXPECT_NE(table.find("100.00"), std::string::npos);
  EXPECT_NE(table.find("36.56"), std::string::npos);
  EXPECT_NE(table.find("93.03"), std::string::npos);
}

TEST(Report, WriteIsDeterministicAndReadable) {
  TempDir dir;
  std::vector<StrategyRow> rows{Row("human", 0.3656), Row("delayed:k=100,beam=6,delay=1", 0.1)};
  rows[1].report.fourgram_proportion = -1.0;
  rows[1].report.spv_skipped = 2;
  const auto a = (dir.path() / "a.csv").string();
  const auto b = (dir.path() / "b.csv").string();
  WriteReport(rows, a);
  WriteReport(rows, b);
  EXPECT_EQ(Slurp(a), Slurp(b));
  EXPECT_EQ(Slurp(dir.path() / "a.txt"), Slurp(dir.path() / "b.txt"));
  auto back = ReadReportCsv(a);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].strategy, rows[1].strategy);
  EXPECT_EQ(back[1].report.spg, rows[1].report.spg);
  EXPECT_EQ(back[1].report.fourgram_proportion, -1.0);
  EXPECT_EQ(back[1].report.spv_skipped, 2u);
  EXPECT_THROW(WriteReport(rows, (dir.path() / "no/such/dir/x.csv").string()), IoError);
}

TEST(Sweep, SingletonAndTopKGrid) {
  MiniWorld w;
  w.cfg.seeds = 1;
  auto inputs = LoadInputs(w.cfg);
  auto single = Sweep(w.cfg, inputs, ExpandGrid("beam:beam=2"));
  ASSERT_TRUE(single.best);
  EXPECT_EQ(single.points[*single.best].config, ParseStrategy("beam:beam=2,max_tokens=48"));

  ASSERT_GE(inputs.model->vocab_size(), 100u);
  auto grid = Sweep(w.cfg, inputs, ExpandGrid("topk:k=2|10|100"));
  ASSERT_EQ(grid.points.size(), 3u);
  ASSERT_TRUE(grid.best);
  for (const auto& p : grid.points) {
    EXPECT_FALSE(p.failed);
    EXPECT_EQ(p.value, p.row.report.uspg);
    EXPECT_LE(p.value, grid.points[*grid.best].value);
  }
  const std::string table = FormatSweepTable(grid, w.cfg.k);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 4);
  EXPECT_NE(table.find("uspg"), std::string::npos);
}

TEST(Sweep, FailedPointsNeverWinAndTiesGoFirst) {
  MiniWorld w;
  w.cfg.seeds = 1;
  auto inputs = LoadInputs(w.cfg);
  auto grid = ExpandGrid(std::vector<std::string>{"topk:k=5000", "beam:beam=2"});
  auto r = Sweep(w.cfg, inputs, grid, Objective::kSpg);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_TRUE(r.points[0].failed);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(*r.best, 1u);

  // Deterministic twins score identically; the first listed wins.
  auto twins = Sweep(w.cfg, inputs,
                     ExpandGrid(std::vector<std::string>{"beam:beam=1", "greedy"}));
  ASSERT_EQ(twins.points.size(), 2u);
  EXPECT_EQ(twins.points[0].value, twins.points[1].value);
  EXPECT_EQ(*twins.best, 0u);
  EXPECT_THROW(Sweep(w.cfg, inputs, {}), ConfigError);
}

TEST(Pipeline, BatchCheckMatchesPerCellChecks) {
  MiniWorld w;
  auto inputs = LoadInputs(w.cfg);
  ExperimentResult r = RunExperiment(w.cfg, inputs);
  OracleFactChecker checker(*inputs.kb, {w.cfg.tau, w.cfg.top_m});
  for (bool parallel : {false, true}) {
    CheckedGeneration batch =
        CheckGenerations(r.generations, inputs.prefixes, checker, w.cfg.k, parallel);
    ASSERT_LE(batch.verdicts.size(), r.verdicts.size());
    for (std::size_t i = 0; i < batch.verdicts.size(); ++i) {
      EXPECT_EQ(batch.sentences[i].text, r.sentences[i].text);
      EXPECT_EQ(batch.verdicts[i].prefix_id, r.verdicts[i].prefix_id);
      EXPECT_EQ(batch.verdicts[i].sentence_index, r.verdicts[i].sentence_index);
      EXPECT_EQ(batch.verdicts[i].verdict, r.verdicts[i].verdict);
    }
    // The rest are the human reference rows.
    for (std::size_t i = batch.verdicts.size(); i < r.verdicts.size(); ++i) {
      EXPECT_EQ(r.verdicts[i].strategy, "human");
    }
  }
  std::vector<GenerationRow> stray{r.generations.front()};
  stray[0].prefix_id = "nope";
  EXPECT_THROW(CheckGenerations(stray, inputs.prefixes, checker, w.cfg.k), ValidationError);
}

TEST(Analysis, FeaturesFollowTheGenerations) {
  MiniWorld w;
  w.cfg.seeds = 1;
  auto inputs = LoadInputs(w.cfg);
  ExperimentResult r = RunExperiment(w.cfg, inputs);
  TfidfIndex index(inputs.kb->documents());
  auto features = ExtractFeatures(r.generations, r.verdicts, inputs.prefixes, *inputs.kb, index,
                                  w.cfg.k);
  std::size_t machine_verdicts = 0;
  for (const auto& v : r.verdicts) machine_verdicts += v.strategy != "human";
  ASSERT_EQ(features.size(), machine_verdicts);

  // Recompute the first sentence of the first generation by scanning for
  // the terminal token.
  const GenerationRow& g = r.generations.front();
  std::size_t end = 0;
  while (end < g.tokens.size() && g.tokens[end] != ".") ++end;
  if (end < g.tokens.size()) ++end;
  double sum = 0.0;
  for (std::size_t t = 0; t < end; ++t) sum += g.token_logprobs[t];
  EXPECT_EQ(features[0].token_count, end);
  EXPECT_NEAR(features[0].mean_logprob, sum / static_cast<double>(end), 1e-12);
  for (const auto& f : features) {
    EXPECT_GE(f.relevance, 0.0);
    EXPECT_LE(f.relevance, 1.0 + 1e-12);
  }
  EXPECT_NE(FormatFeaturesCsv(features).find("prefix_id,strategy"), std::string::npos);
}

TEST(Analysis, CorrelationUsesVerifiedSentencesOnly) {
  auto f = [](double lp, std::size_t n, double rel, Label l) {
    SentenceFeatures s;
    s.mean_logprob = lp;
    s.token_count = n;
    s.relevance = rel;
    s.label = l;
    return s;
  };
  std::vector<SentenceFeatures> features{
      f(-1.0, 4, 0.9, Label::kSupported), f(-3.0, 4, 0.1, Label::kRefuted),
      f(-1.0, 4, 0.8, Label::kSupported), f(-3.0, 4, 0.2, Label::kRefuted),
      f(-9.0, 4, 0.0, Label::kNotEnoughInfo)};
  auto c = CorrelateWithSupport(features);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].samples, 4u);
  ASSERT_TRUE(c[0].pearson);
  EXPECT_NEAR(*c[0].pearson, 1.0, 1e-12);
  EXPECT_FALSE(c[1].pearson);  // constant length
  // relevance (0.9, 0.1, 0.8, 0.2) against (1, 0, 1, 0): deviation
  // products sum to 0.7, squared deviations to 0.5 and 1.
  ASSERT_TRUE(c[2].pearson);
  EXPECT_NEAR(*c[2].pearson, 0.7 / std::sqrt(0.5), 1e-12);
  EXPECT_NE(FormatCorrelations(c).find("undefined"), std::string::npos);
}

TEST(Desk, DelayedBeamDiversitySitsBetweenItsParents) {
  ExperimentConfig cfg = ExperimentConfig::FromJsonFile(VERIDECODE_DESK_CONFIG);
  cfg.output_dir.clear();
  cfg.strategies = {ParseStrategy("beam:beam=6"), ParseStrategy("delayed:k=100,beam=6,delay=1"),
                    ParseStrategy("topk:k=100")};
  cfg.seeds = 3;
  ExperimentResult r = RunExperiment(cfg, LoadInputs(cfg));
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.rows.size(), 4u);
  const double bs = r.rows[1].report.distinct_4grams;
  const double delayed = r.rows[2].report.distinct_4grams;
  const double topk = r.rows[3].report.distinct_4grams;
  EXPECT_LT(bs, delayed);
  EXPECT_LT(delayed, topk);
}

}  // namespace
}  // namespace veridecode
