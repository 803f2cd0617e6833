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

// Serial reference paths against their OpenMP counterparts on the desk
// fixture. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "veridecode/factcheck/checker.h"
#include "veridecode/harness/experiment.h"
#include "veridecode/lm/tokenizer.h"
#include "veridecode/textproc/sentences.h"

#ifndef VERIDECODE_DESK_CONFIG
#define VERIDECODE_DESK_CONFIG "data/desk/experiment.json"
#endif

namespace veridecode {
namespace {

struct Desk {
  ExperimentConfig cfg;
  ExperimentInputs inputs;
  std::unique_ptr<OracleFactChecker> checker;
  std::vector<std::string> sentences;
};

const Desk& GetDesk() {
  static const Desk desk = [] {
    Desk d;
    d.cfg = ExperimentConfig::FromJsonFile(VERIDECODE_DESK_CONFIG);
    d.inputs = LoadInputs(d.cfg);
    d.checker = std::make_unique<OracleFactChecker>(*d.inputs.kb);
    for (const PrefixEntry& p : d.inputs.prefixes) {
      std::string sentence;
      for (const std::string& t : Tokenize(p.reference)) {
        sentence += sentence.empty() ? t : " " + t;
        if (t == ".") {
          d.sentences.push_back(SubstituteReferents(sentence, p.title));
          sentence.clear();
        }
      }
    }
    return d;
  }();
  return desk;
}

void BM_RunCells(benchmark::State& state) {
  const Desk& d = GetDesk();
  const std::vector<StrategyConfig> strategies{ParseStrategy("topk:k=2,max_tokens=128"),
                                               ParseStrategy("beam:beam=6,max_tokens=128")};
  const auto cells = EnumerateCells(strategies.size(), d.inputs.prefixes.size(), 1);
  const Execution mode = state.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) {
    auto out = RunCells(*d.inputs.model, d.inputs.prefixes, strategies, cells, d.checker.get(),
                        d.cfg.global_seed, d.cfg.k, mode);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cells.size()));
}
BENCHMARK(BM_RunCells)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CheckAll(benchmark::State& state) {
  const Desk& d = GetDesk();
  for (auto _ : state) {
    auto v = state.range(0) ? CheckAll(*d.checker, d.sentences)
                            : CheckAllSerial(*d.checker, d.sentences);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(d.sentences.size()));
}
BENCHMARK(BM_CheckAll)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Retrieve(benchmark::State& state) {
  const Desk& d = GetDesk();
  const TfidfIndex& index = d.checker->index();
  std::size_t i = 0;
  for (auto _ : state) {
    const std::string& q = d.sentences[i++ % d.sentences.size()];
    auto r = state.range(0) ? index.Retrieve(q, 5) : index.RetrieveSerial(q, 5);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Retrieve)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace veridecode

BENCHMARK_MAIN();
