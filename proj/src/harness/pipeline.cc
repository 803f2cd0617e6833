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

#include "veridecode/harness/pipeline.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "veridecode/errors.h"
#include "veridecode/lm/tokenizer.h"
#include "veridecode/textproc/ngrams.h"
#include "veridecode/textproc/sentences.h"

namespace veridecode {

CheckedGeneration CheckGeneration(std::span<const std::string> tokens, const PrefixEntry& prefix,
                                  const std::string& strategy, std::uint64_t seed,
                                  const FactChecker& checker, std::size_t k) {
  CheckedGeneration out;
  const auto all = SegmentSentences(tokens);
  for (const SentenceRecord& s : FirstSentences(all, k)) {
    SentenceRow row;
    row.prefix_id = prefix.prefix_id;
    row.strategy = strategy;
    row.seed = seed;
    row.sentence_index = s.index;
    row.raw_text = SentenceText(tokens, s);
    row.text = SubstituteReferents(row.raw_text, prefix.title);
    row.token_count = s.token_count();
    row.verifiable = IsVerifiable(s);

    VerdictRow verdict;
    verdict.prefix_id = prefix.prefix_id;
    verdict.strategy = strategy;
    verdict.seed = seed;
    verdict.sentence_index = s.index;
    if (row.verifiable) {
      verdict.verdict = checker.Check(row.text);
    } else {
      verdict.by_length = true;
    }
    out.sentences.push_back(std::move(row));
    out.verdicts.push_back(std::move(verdict));
  }
  return out;
}

CheckedGeneration CheckGenerations(std::span<const GenerationRow> generations,
                                   std::span<const PrefixEntry> prefixes,
                                   const FactChecker& checker, std::size_t k, bool parallel) {
  std::unordered_map<std::string, const PrefixEntry*> by_id;
  for (const PrefixEntry& p : prefixes) by_id.emplace(p.prefix_id, &p);
  std::vector<const PrefixEntry*> owner(generations.size());
  for (std::size_t i = 0; i < generations.size(); ++i) {
    auto it = by_id.find(generations[i].prefix_id);
    if (it == by_id.end()) {
      throw ValidationError("generation for unknown prefix '" + generations[i].prefix_id + "'");
    }
    owner[i] = it->second;
  }
  std::vector<CheckedGeneration> parts(generations.size());
  const long n = static_cast<long>(generations.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long i = 0; i < n; ++i) {
    const GenerationRow& g = generations[i];
    parts[i] = CheckGeneration(g.tokens, *owner[i], ToSpec(g.strategy), g.seed, checker, k);
  }
  CheckedGeneration out;
  for (CheckedGeneration& part : parts) {
    std::move(part.sentences.begin(), part.sentences.end(), std::back_inserter(out.sentences));
    std::move(part.verdicts.begin(), part.verdicts.end(), std::back_inserter(out.verdicts));
  }
  return out;
}

std::vector<StrategyRow> Aggregate(std::span<const GenerationRow> generations,
                                   std::span<const VerdictRow> verdicts,
                                   std::span<const PrefixEntry> prefixes, std::size_t k) {
  std::unordered_map<std::string, double> human_4grams;
  bool have_references = false;
  for (const PrefixEntry& p : prefixes) {
    if (p.reference.empty()) continue;
    have_references = true;
    human_4grams[p.prefix_id] = static_cast<double>(DistinctNgrams(Tokenize(p.reference), 4));
  }

  using Key = std::tuple<std::string, std::uint64_t, std::string>;
  std::map<Key, std::vector<const VerdictRow*>> by_cell;
  for (const VerdictRow& v : verdicts) by_cell[{v.strategy, v.seed, v.prefix_id}].push_back(&v);
  for (auto& [key, rows] : by_cell) {
    std::stable_sort(rows.begin(), rows.end(), [](const VerdictRow* a, const VerdictRow* b) {
      return a->sentence_index < b->sentence_index;
    });
  }

  std::vector<std::string> order;
  std::map<std::string, std::string> names;
  std::map<std::string, std::map<std::uint64_t, std::vector<const GenerationRow*>>> cells;
  for (const GenerationRow& g : generations) {
    const std::string spec = ToSpec(g.strategy);
    if (!names.contains(spec)) {
      order.push_back(spec);
      names[spec] = g.strategy.Describe();
    }
    cells[spec][g.seed].push_back(&g);
  }

  std::vector<StrategyRow> out;
  for (const std::string& spec : order) {
    StrategyRow row;
    row.strategy = spec;
    row.name = names[spec];
    std::vector<MetricReport> per_seed;
    for (const auto& [seed, gens] : cells[spec]) {
      std::vector<PrefixVerdicts> pv;
      std::vector<double> machine, human;
      double distinct = 0.0;
      for (const GenerationRow* g : gens) {
        PrefixVerdicts p;
        p.prefix_id = g->prefix_id;
        auto it = by_cell.find({spec, seed, g->prefix_id});
        if (it != by_cell.end()) {
          for (const VerdictRow* v : it->second) p.verdicts.push_back(v->verdict);
        }
        pv.push_back(std::move(p));
        const double d = static_cast<double>(DistinctNgrams(g->tokens, 4));
        distinct += d;
        if (have_references) {
          machine.push_back(d);
          auto h = human_4grams.find(g->prefix_id);
          human.push_back(h == human_4grams.end() ? 0.0 : h->second);
        }
      }
      MetricReport r = ComputeMetrics(pv, k);
      r.distinct_4grams = distinct / static_cast<double>(gens.size());
      if (have_references) {
        Proportion prop = FourgramProportion(machine, human);
        r.fourgram_proportion = prop.used ? prop.value : -1.0;
        r.proportion_skipped = prop.skipped;
      }
      row.generations += gens.size();
      per_seed.push_back(r);
    }
    row.report = AverageReports(per_seed);
    out.push_back(std::move(row));
  }
  return out;
}

HumanReference EvaluateHumanReference(std::span<const PrefixEntry> prefixes,
                                      const FactChecker& checker, std::size_t k) {
  HumanReference out;
  std::vector<PrefixVerdicts> pv;
  std::vector<double> counts;
  for (const PrefixEntry& p : prefixes) {
    if (p.reference.empty()) continue;
    const std::vector<std::string> tokens = Tokenize(p.reference);
    CheckedGeneration checked =
        CheckGeneration(tokens, p, std::string(kHumanStrategy), 0, checker, k);
    PrefixVerdicts v;
    v.prefix_id = p.prefix_id;
    for (const VerdictRow& r : checked.verdicts) v.verdicts.push_back(r.verdict);
    pv.push_back(std::move(v));
    counts.push_back(static_cast<double>(DistinctNgrams(tokens, 4)));
    std::move(checked.sentences.begin(), checked.sentences.end(),
              std::back_inserter(out.sentences));
    std::move(checked.verdicts.begin(), checked.verdicts.end(), std::back_inserter(out.verdicts));
  }
  if (pv.empty()) return out;
  StrategyRow row;
  row.strategy = std::string(kHumanStrategy);
  row.name = std::string(kHumanStrategy);
  row.report = ComputeMetrics(pv, k);
  double total = 0.0;
  for (double c : counts) total += c;
  row.report.distinct_4grams = total / static_cast<double>(counts.size());
  Proportion prop = FourgramProportion(counts, counts);
  row.report.fourgram_proportion = prop.used ? prop.value : -1.0;
  row.report.proportion_skipped = prop.skipped;
  row.generations = pv.size();
  out.row.push_back(std::move(row));
  return out;
}

}  // namespace veridecode
