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

#include "veridecode/decode/strategy.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string FormatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

int ParseInt(std::string_view key, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("parameter '" + std::string(key) + "' expects an integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

double ParseReal(std::string_view key, std::string_view value) {
  std::string s(value);
  char* end = nullptr;
  double out = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(out)) {
    throw ConfigError("parameter '" + std::string(key) + "' expects a number, got '" + s + "'");
  }
  return out;
}

}  // namespace

std::string StrategyConfig::Name() const {
  std::string base = std::visit(
      Overloaded{[](const Greedy&) { return "greedy"; }, [](const TopK&) { return "top-k"; },
                 [](const TopP&) { return "top-p"; }, [](const Beam&) { return "BS"; },
                 [](const GroupBeam&) { return "GroupBS"; },
                 [](const SiblingBeam&) { return "SiblingBS"; },
                 [](const DelayedBeam&) { return "DelayedBS"; }},
      strategy);
  return blocking_order ? base + "_b" : base;
}

std::vector<std::pair<std::string, std::string>> StrategyConfig::Params() const {
  std::vector<std::pair<std::string, std::string>> out = std::visit(
      Overloaded{
          [](const Greedy&) { return std::vector<std::pair<std::string, std::string>>{}; },
          [](const TopK& s) {
            return std::vector<std::pair<std::string, std::string>>{{"k", std::to_string(s.k)}};
          },
          [](const TopP& s) {
            return std::vector<std::pair<std::string, std::string>>{{"p", FormatReal(s.p)}};
          },
          [](const Beam& s) {
            return std::vector<std::pair<std::string, std::string>>{
                {"beam", std::to_string(s.beam_size)}};
          },
          [](const GroupBeam& s) {
            return std::vector<std::pair<std::string, std::string>>{
                {"beam", std::to_string(s.beam_size)},
                {"groups", std::to_string(s.groups)},
                {"penalty", FormatReal(s.penalty)}};
          },
          [](const SiblingBeam& s) {
            return std::vector<std::pair<std::string, std::string>>{
                {"beam", std::to_string(s.beam_size)}, {"penalty", FormatReal(s.penalty)}};
          },
          [](const DelayedBeam& s) {
            return std::vector<std::pair<std::string, std::string>>{
                {"k", std::to_string(s.top_k)},
                {"beam", std::to_string(s.beam_size)},
                {"delay", std::to_string(s.delay)}};
          }},
      strategy);
  if (blocking_order) out.emplace_back("block", std::to_string(*blocking_order));
  if (max_tokens != kDefaultMaxTokens) out.emplace_back("max_tokens", std::to_string(max_tokens));
  return out;
}

std::string StrategyConfig::Describe() const {
  std::string out = Name();
  auto params = Params();
  if (params.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += params[i].first + "=" + params[i].second;
  }
  return out + ')';
}

bool StrategyConfig::IsStochastic() const {
  return std::holds_alternative<TopK>(strategy) || std::holds_alternative<TopP>(strategy) ||
         (std::holds_alternative<DelayedBeam>(strategy) &&
          std::get<DelayedBeam>(strategy).delay > 0);
}

bool StrategyConfig::operator==(const StrategyConfig& other) const {
  return ToSpec(*this) == ToSpec(other);
}

void Validate(const StrategyConfig& cfg) {
  if (cfg.max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (cfg.blocking_order && *cfg.blocking_order < 2) {
    throw ConfigError("blocking order must be >= 2");
  }
  std::visit(
      Overloaded{
          [](const Greedy&) {},
          [](const TopK& s) {
            if (s.k < 1) throw ConfigError("top-k needs k >= 1");
          },
          [](const TopP& s) {
            if (!(s.p > 0.0 && s.p <= 1.0)) throw ConfigError("top-p needs 0 < p <= 1");
          },
          [](const Beam& s) {
            if (s.beam_size < 1) throw ConfigError("beam size must be >= 1");
          },
          [](const GroupBeam& s) {
            if (s.beam_size < 1) throw ConfigError("beam size must be >= 1");
            if (s.groups < 1) throw ConfigError("group count must be >= 1");
            if (s.beam_size % s.groups != 0) {
              throw ConfigError("group count must divide the beam size");
            }
            if (!(s.penalty >= 0.0)) throw ConfigError("group penalty must be >= 0");
          },
          [](const SiblingBeam& s) {
            if (s.beam_size < 1) throw ConfigError("beam size must be >= 1");
            if (!(s.penalty >= 0.0)) throw ConfigError("sibling penalty must be >= 0");
          },
          [](const DelayedBeam& s) {
            if (s.top_k < 1) throw ConfigError("top-k needs k >= 1");
            if (s.beam_size < 1) throw ConfigError("beam size must be >= 1");
            if (s.delay < 0) throw ConfigError("delay must be >= 0");
          }},
      cfg.strategy);
}

StrategyConfig ParseStrategy(std::string_view text) {
  std::string_view kind = text;
  std::string_view rest;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    kind = text.substr(0, colon);
    rest = text.substr(colon + 1);
  }
  std::map<std::string, std::string, std::less<>> kv;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("malformed strategy parameter '" + std::string(item) + "'");
    }
    if (!kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second) {
      throw ConfigError("repeated strategy parameter '" + std::string(item.substr(0, eq)) + "'");
    }
  }
  auto take_int = [&](std::string_view key, int fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    int v = ParseInt(key, it->second);
    kv.erase(it);
    return v;
  };
  auto take_real = [&](std::string_view key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    double v = ParseReal(key, it->second);
    kv.erase(it);
    return v;
  };

  StrategyConfig cfg;
  if (kind == "greedy") {
    cfg.strategy = Greedy{};
  } else if (kind == "topk") {
    cfg.strategy = TopK{take_int("k", TopK{}.k)};
  } else if (kind == "topp") {
    cfg.strategy = TopP{take_real("p", TopP{}.p)};
  } else if (kind == "beam") {
    cfg.strategy = Beam{take_int("beam", Beam{}.beam_size)};
  } else if (kind == "group") {
    GroupBeam s;
    s.beam_size = take_int("beam", s.beam_size);
    s.groups = take_int("groups", s.groups);
    s.penalty = take_real("penalty", s.penalty);
    cfg.strategy = s;
  } else if (kind == "sibling") {
    SiblingBeam s;
    s.beam_size = take_int("beam", s.beam_size);
    s.penalty = take_real("penalty", s.penalty);
    cfg.strategy = s;
  } else if (kind == "delayed") {
    DelayedBeam s;
    s.top_k = take_int("k", s.top_k);
    s.beam_size = take_int("beam", s.beam_size);
    s.delay = take_int("delay", s.delay);
    cfg.strategy = s;
  } else {
    throw ConfigError("unknown strategy kind '" + std::string(kind) + "'");
  }
  if (kv.contains("block")) cfg.blocking_order = take_int("block", 0);
  cfg.max_tokens = take_int("max_tokens", kDefaultMaxTokens);
  if (!kv.empty()) {
    throw ConfigError("unknown parameter '" + kv.begin()->first + "' for strategy '" +
                      std::string(kind) + "'");
  }
  Validate(cfg);
  return cfg;
}

std::string ToSpec(const StrategyConfig& cfg) {
  std::string kind = std::visit(
      Overloaded{[](const Greedy&) { return "greedy"; }, [](const TopK&) { return "topk"; },
                 [](const TopP&) { return "topp"; }, [](const Beam&) { return "beam"; },
                 [](const GroupBeam&) { return "group"; },
                 [](const SiblingBeam&) { return "sibling"; },
                 [](const DelayedBeam&) { return "delayed"; }},
      cfg.strategy);
  auto params = cfg.Params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    kind += (i ? ',' : ':');
    kind += params[i].first + "=" + params[i].second;
  }
  return kind;
}

std::vector<StrategyConfig> DefaultStrategies() {
  std::vector<StrategyConfig> out;
  out.push_back({TopK{2}, std::nullopt});
  out.push_back({TopP{0.4}, std::nullopt});
  out.push_back({Greedy{}, std::nullopt});
  out.push_back({Beam{15}, std::nullopt});
  out.push_back({GroupBeam{16, 2, 0.2}, std::nullopt});
  out.push_back({SiblingBeam{15, 0.1}, std::nullopt});
  out.push_back({DelayedBeam{100, 6, 1}, std::nullopt});
  out.push_back({Beam{15}, 20});
  return out;
}

}  // namespace veridecode
