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

#include "veridecode/lm/ngram_lm.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

constexpr const char* kMagic = "veridecode-ngram";
constexpr int kFormatVersion = 1;

void ValidateSmoothing(const SmoothingConfig& s, int order) {
  if (!(s.add_k > 0.0) || !std::isfinite(s.add_k)) {
    throw ConfigError("add-k constant must be > 0");
  }
  if (s.kind == SmoothingConfig::Kind::kInterpolated) {
    if (static_cast<int>(s.lambdas.size()) != order) {
      throw ConfigError("interpolation needs one weight per order");
    }
    double sum = 0.0;
    for (double l : s.lambdas) {
      if (!(l >= 0.0)) throw ConfigError("interpolation weights must be >= 0");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("interpolation weights must sum to 1");
    if (!(s.lambdas[0] > 0.0)) throw ConfigError("unigram weight must be > 0");
  }
}

std::string HexDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double ParseDouble(const std::string& s, long line) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError("bad number '" + s + "'", line);
  return v;
}

}  // namespace

NGramLM TrainNGram(std::span<const TokenId> corpus, const Vocabulary& vocab, int order,
                   const SmoothingConfig& smoothing) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (corpus.empty()) throw ConfigError("training corpus is empty");
  if (corpus.size() < static_cast<std::size_t>(order)) {
    throw ConfigError("training corpus shorter than the model order");
  }
  if (vocab.size() < 2) throw ConfigError("vocabulary needs at least two tokens");
  ValidateSmoothing(smoothing, order);
  for (TokenId id : corpus) {
    if (!vocab.Contains(id)) throw InputError("corpus token id out of range");
  }

  NGramLM lm;
  lm.order_ = order;
  lm.vocab_ = vocab;
  lm.smoothing_ = smoothing;
  lm.tables_.assign(order, {});

  // Sparse counts are accumulated in ordered maps so the table layout is a
  // function of the corpus alone.
  std::vector<std::map<std::vector<TokenId>, std::map<TokenId, std::uint64_t>>> raw(order);
  std::vector<TokenId> history;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    for (int m = 0; m < order && static_cast<std::size_t>(m) <= t; ++m) {
      history.assign(corpus.begin() + (t - m), corpus.begin() + t);
      ++raw[m][history][corpus[t]];
    }
  }
  for (int m = 0; m < order; ++m) {
    for (auto& [h, nexts] : raw[m]) {
      HistoryCounts hc;
      hc.next.assign(nexts.begin(), nexts.end());
      for (const auto& [id, c] : hc.next) hc.total += c;
      lm.tables_[m].emplace(h, std::move(hc));
    }
  }
  lm.Finalize();
  return lm;
}

NGramLM TrainNGram(std::span<const std::string> corpus, int order,
                   const SmoothingConfig& smoothing, bool add_unknown) {
  if (corpus.empty()) throw ConfigError("training corpus is empty");
  Vocabulary vocab = Vocabulary::FromCorpus(corpus, add_unknown);
  std::vector<TokenId> ids = vocab.Encode(corpus);
  return TrainNGram(ids, vocab, order, smoothing);
}

void NGramLM::Finalize() {
  const double v = static_cast<double>(vocab_.size());
  const double k = smoothing_.add_k;
  const HistoryCounts& uni = tables_[0].at({});
  const double denom = static_cast<double>(uni.total) + k * v;
  unigram_probs_.assign(vocab_.size(), k / denom);
  for (const auto& [id, c] : uni.next) {
    unigram_probs_[id] = (static_cast<double>(c) + k) / denom;
  }
}

const HistoryCounts* NGramLM::Find(std::span<const TokenId> history) const {
  if (history.size() >= tables_.size()) return nullptr;
  const auto& table = tables_[history.size()];
  auto it = table.find(std::vector<TokenId>(history.begin(), history.end()));
  return it == table.end() ? nullptr : &it->second;
}

TokenDistribution NGramLM::NextDistribution(std::span<const TokenId> context) const {
  for (TokenId id : context) {
    if (!vocab_.Contains(id)) {
      throw InputError("context token id " + std::to_string(id) + " out of range");
    }
  }
  const std::size_t max_hist = std::min<std::size_t>(order_ - 1, context.size());
  const double v = static_cast<double>(vocab_.size());
  std::vector<double> probs;

  if (smoothing_.kind == SmoothingConfig::Kind::kAddK) {
    const HistoryCounts* hc = nullptr;
    for (std::size_t len = max_hist; len > 0 && !hc; --len) hc = Find(context.last(len));
    if (!hc) {
      probs = unigram_probs_;
    } else {
      const double k = smoothing_.add_k;
      const double denom = static_cast<double>(hc->total) + k * v;
      probs.assign(vocab_.size(), k / denom);
      for (const auto& [id, c] : hc->next) probs[id] = (static_cast<double>(c) + k) / denom;
    }
  } else {
    // Orders whose history was never seen drop out and the remaining
    // weights are renormalized.
    std::vector<const HistoryCounts*> seen(order_, nullptr);
    double weight = smoothing_.lambdas[0];
    for (std::size_t len = 1; len <= max_hist; ++len) {
      seen[len] = Find(context.last(len));
      if (seen[len]) weight += smoothing_.lambdas[len];
    }
    const double scale = smoothing_.lambdas[0] / weight;
    probs.resize(vocab_.size());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = scale * unigram_probs_[i];
    for (std::size_t len = 1; len <= max_hist; ++len) {
      const HistoryCounts* hc = seen[len];
      if (!hc) continue;
      const double w = smoothing_.lambdas[len] / weight / static_cast<double>(hc->total);
      for (const auto& [id, c] : hc->next) probs[id] += w * static_cast<double>(c);
    }
  }

  TokenDistribution dist;
  dist.logprobs.resize(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) dist.logprobs[i] = std::log(probs[i]);
  return dist;
}

bool NGramLM::operator==(const NGramLM& other) const {
  if (order_ != other.order_ || !(vocab_ == other.vocab_)) return false;
  if (smoothing_.kind != other.smoothing_.kind || smoothing_.add_k != other.smoothing_.add_k ||
      smoothing_.lambdas != other.smoothing_.lambdas) {
    return false;
  }
  if (tables_.size() != other.tables_.size()) return false;
  for (std::size_t m = 0; m < tables_.size(); ++m) {
    if (tables_[m].size() != other.tables_[m].size()) return false;
    auto a = tables_[m].begin();
    auto b = other.tables_[m].begin();
    for (; a != tables_[m].end(); ++a, ++b) {
      if (a->first != b->first || a->second.total != b->second.total ||
          a->second.next != b->second.next) {
        return false;
      }
    }
  }
  return true;
}

// Layout:
//   veridecode-ngram 1
//   order N
//   smoothing addk|interpolated K L lambda_1 .. lambda_L     (hex floats)
//   vocab V
//   <V token lines>
//   ngrams C
//   <C lines: history_len h_1 .. h_len next count>
void NGramLM::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "order " << order_ << '\n';
  out << "smoothing "
      << (smoothing_.kind == SmoothingConfig::Kind::kAddK ? "addk" : "interpolated") << ' '
      << HexDouble(smoothing_.add_k) << ' ' << smoothing_.lambdas.size();
  for (double l : smoothing_.lambdas) out << ' ' << HexDouble(l);
  out << '\n';
  out << "vocab " << vocab_.size() << '\n';
  for (const auto& t : vocab_.tokens()) out << t << '\n';
  std::size_t lines = 0;
  for (const auto& table : tables_) {
    for (const auto& [h, hc] : table) lines += hc.next.size();
  }
  out << "ngrams " << lines << '\n';
  for (const auto& table : tables_) {
    for (const auto& [h, hc] : table) {
      for (const auto& [id, c] : hc.next) {
        out << h.size();
        for (TokenId x : h) out << ' ' << x;
        out << ' ' << id << ' ' << c << '\n';
      }
    }
  }
  if (!out) throw IoError("failed writing " + path);
}

NGramLM NGramLM::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  long line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError("unexpected end of model file", line_no + 1);
    ++line_no;
    return std::istringstream(line);
  };

  {
    auto ss = next_line();
    std::string magic;
    int version = 0;
    ss >> magic >> version;
    if (magic != kMagic) throw ParseError("not a veridecode n-gram model", line_no);
    if (version != kFormatVersion) {
      throw ParseError("unsupported model version " + std::to_string(version), line_no);
    }
  }
  NGramLM lm;
  {
    auto ss = next_line();
    std::string key;
    if (!(ss >> key >> lm.order_) || key != "order" || lm.order_ < 1) {
      throw ParseError("bad order line", line_no);
    }
  }
  {
    auto ss = next_line();
    std::string key, kind, k;
    std::size_t n = 0;
    if (!(ss >> key >> kind >> k >> n) || key != "smoothing") {
      throw ParseError("bad smoothing line", line_no);
    }
    if (kind == "addk") {
      lm.smoothing_.kind = SmoothingConfig::Kind::kAddK;
    } else if (kind == "interpolated") {
      lm.smoothing_.kind = SmoothingConfig::Kind::kInterpolated;
    } else {
      throw ParseError("unknown smoothing '" + kind + "'", line_no);
    }
    lm.smoothing_.add_k = ParseDouble(k, line_no);
    for (std::size_t i = 0; i < n; ++i) {
      std::string l;
      if (!(ss >> l)) throw ParseError("missing interpolation weight", line_no);
      lm.smoothing_.lambdas.push_back(ParseDouble(l, line_no));
    }
    try {
      ValidateSmoothing(lm.smoothing_, lm.order_);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  std::size_t vsize = 0;
  {
    auto ss = next_line();
    std::string key;
    if (!(ss >> key >> vsize) || key != "vocab") throw ParseError("bad vocab line", line_no);
  }
  std::vector<std::string> tokens(vsize);
  for (auto& t : tokens) {
    if (!std::getline(in, t)) throw ParseError("truncated vocabulary", line_no + 1);
    ++line_no;
  }
  try {
    lm.vocab_ = Vocabulary(std::move(tokens));
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), line_no);
  }
  std::size_t count_lines = 0;
  {
    auto ss = next_line();
    std::string key;
    if (!(ss >> key >> count_lines) || key != "ngrams") throw ParseError("bad ngrams line", line_no);
  }
  lm.tables_.assign(lm.order_, {});
  for (std::size_t i = 0; i < count_lines; ++i) {
    auto ss = next_line();
    std::size_t len = 0;
    if (!(ss >> len) || len >= static_cast<std::size_t>(lm.order_)) {
      throw ParseError("bad history length", line_no);
    }
    std::vector<TokenId> h(len);
    TokenId next = 0;
    std::uint64_t c = 0;
    for (auto& x : h) ss >> x;
    if (!(ss >> next >> c) || c == 0) throw ParseError("bad n-gram line", line_no);
    for (TokenId x : h) {
      if (!lm.vocab_.Contains(x)) throw ParseError("token id out of range", line_no);
    }
    if (!lm.vocab_.Contains(next)) throw ParseError("token id out of range", line_no);
    HistoryCounts& hc = lm.tables_[len][h];
    if (!hc.next.empty() && hc.next.back().first >= next) {
      throw ParseError("n-gram lines out of order", line_no);
    }
    hc.next.emplace_back(next, c);
    hc.total += c;
  }
  if (!lm.tables_[0].contains({})) throw ParseError("model has no unigram counts", line_no);
  lm.Finalize();
  return lm;
}

}  // namespace veridecode
