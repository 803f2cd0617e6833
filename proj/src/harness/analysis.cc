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

#include "veridecode/harness/analysis.h"

#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "veridecode/errors.h"
#include "veridecode/metrics/metrics.h"
#include "veridecode/textproc/sentences.h"

namespace veridecode {

std::vector<SentenceFeatures> ExtractFeatures(std::span<const GenerationRow> generations,
                                              std::span<const VerdictRow> verdicts,
                                              std::span<const PrefixEntry> prefixes,
                                              const KnowledgeBase& kb, const TfidfIndex& index,
                                              std::size_t k) {
  using Key = std::tuple<std::string, std::uint64_t, std::string, std::size_t>;
  std::map<Key, Label> labels;
  for (const VerdictRow& v : verdicts) {
    labels[{v.strategy, v.seed, v.prefix_id, v.sentence_index}] = v.verdict.label;
  }
  std::unordered_map<std::string, const PrefixEntry*> by_id;
  for (const PrefixEntry& p : prefixes) by_id.emplace(p.prefix_id, &p);

  std::vector<SentenceFeatures> out;
  for (const GenerationRow& g : generations) {
    auto pit = by_id.find(g.prefix_id);
    if (pit == by_id.end()) continue;
    const PrefixEntry& prefix = *pit->second;
    const Document* doc = prefix.doc_id.empty() ? nullptr : kb.FindDocument(prefix.doc_id);
    const std::string spec = ToSpec(g.strategy);
    for (const SentenceRecord& s : FirstSentences(SegmentSentences(g.tokens), k)) {
      auto lit = labels.find({spec, g.seed, g.prefix_id, s.index});
      if (lit == labels.end()) continue;
      SentenceFeatures f;
      f.prefix_id = g.prefix_id;
      f.strategy = spec;
      f.seed = g.seed;
      f.sentence_index = s.index;
      f.token_count = s.token_count();
      double sum = 0.0;
      for (std::size_t t = s.begin; t < s.end; ++t) sum += g.token_logprobs.at(t);
      f.mean_logprob = s.token_count() ? sum / static_cast<double>(s.token_count()) : 0.0;
      if (doc) {
        f.relevance =
            index.Relevance(SubstituteReferents(SentenceText(g.tokens, s), prefix.title), doc->text);
      }
      f.label = lit->second;
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Correlation> CorrelateWithSupport(std::span<const SentenceFeatures> features) {
  std::vector<double> logprob, length, relevance, supported;
  for (const SentenceFeatures& f : features) {
    if (f.label == Label::kNotEnoughInfo) continue;
    logprob.push_back(f.mean_logprob);
    length.push_back(static_cast<double>(f.token_count));
    relevance.push_back(f.relevance);
    supported.push_back(f.label == Label::kSupported ? 1.0 : 0.0);
  }
  std::vector<Correlation> out;
  auto add = [&](const char* name, const std::vector<double>& x) {
    Correlation c{name, std::nullopt, x.size()};
    try {
      c.pearson = Pearson(x, supported);
    } catch (const InputError&) {
    } catch (const UndefinedCorrelationError&) {
    }
    out.push_back(std::move(c));
  };
  add("mean_logprob", logprob);
  add("token_count", length);
  add("tfidf_relevance", relevance);
  return out;
}

std::string FormatFeaturesCsv(std::span<const SentenceFeatures> features) {
  std::ostringstream out;
  out << "prefix_id,strategy,seed,sentence_index,mean_logprob,token_count,relevance,label\n";
  char buf[64];
  for (const SentenceFeatures& f : features) {
    out << f.prefix_id << ",\"" << f.strategy << "\"," << f.seed << ',' << f.sentence_index << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g", f.mean_logprob, f.token_count, f.relevance);
    out << buf << ',' << LabelName(f.label) << '\n';
  }
  return out.str();
}

std::string FormatCorrelations(std::span<const Correlation> correlations) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-16s %10s %8s\n", "feature", "pearson", "n");
  out << buf;
  for (const Correlation& c : correlations) {
    if (c.pearson) {
      std::snprintf(buf, sizeof buf, "%-16s %10.4f %8zu\n", c.feature.c_str(), *c.pearson,
                    c.samples);
    } else {
      std::snprintf(buf, sizeof buf, "%-16s %10s %8zu\n", c.feature.c_str(), "undefined",
                    c.samples);
    }
    out << buf;
  }
  return out.str();
}

}  // namespace veridecode
