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

#include "veridecode/harness/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "veridecode/errors.h"

namespace veridecode {
namespace {

constexpr const char* kHeader =
    "strategy,name,generations,failed_cells,prefixes,distinct_4grams,fourgram_proportion,"
    "spg,spv,uspg,uspv,spv_skipped,uspv_skipped,proportion_skipped";
constexpr std::size_t kColumns = 14;

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote", line_no);
  return fields;
}

double ToDouble(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'", line_no);
  }
}

std::size_t ToCount(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError("bad count '" + s + "'", line_no);
  }
}

}  // namespace

std::string FormatCsv(std::span<const StrategyRow> rows) {
  std::ostringstream out;
  out << kHeader << '\n';
  for (const StrategyRow& r : rows) {
    const MetricReport& m = r.report;
    out << Quote(r.strategy) << ',' << Quote(r.name) << ',' << r.generations << ','
        << r.failed_cells << ',' << m.prefixes << ',' << Num(m.distinct_4grams) << ','
        << Num(m.fourgram_proportion) << ',' << Num(m.spg) << ',' << Num(m.spv) << ','
        << Num(m.uspg) << ',' << Num(m.uspv) << ',' << m.spv_skipped << ',' << m.uspv_skipped
        << ',' << m.proportion_skipped << '\n';
  }
  return out.str();
}

std::string FormatTable(std::span<const StrategyRow> rows) {
  std::size_t width = 8;
  for (const StrategyRow& r : rows) width = std::max(width, r.name.size());
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s %9s %9s %8s %8s %8s %8s\n", static_cast<int>(width),
                "Decoding", "4-grams", "4-gram%", "SPG", "SPV", "USPG", "USPV");
  out << buf;
  for (const StrategyRow& r : rows) {
    const MetricReport& m = r.report;
    char prop[16];
    if (m.fourgram_proportion < 0) {
      std::snprintf(prop, sizeof prop, "%s", "-");
    } else {
      std::snprintf(prop, sizeof prop, "%.2f", 100.0 * m.fourgram_proportion);
    }
    std::snprintf(buf, sizeof buf, "%-*s %9.2f %9s %8.2f %8.2f %8.2f %8.2f", static_cast<int>(width),
                  r.name.c_str(), m.distinct_4grams, prop, 100.0 * m.spg, 100.0 * m.spv,
                  100.0 * m.uspg, 100.0 * m.uspv);
    out << buf;
    if (r.failed_cells) out << "  (" << r.failed_cells << " failed cells)";
    out << '\n';
  }
  return out.str();
}

void WriteReport(std::span<const StrategyRow> rows, const std::string& csv_path) {
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + csv_path);
    out << FormatCsv(rows);
  }
  std::string txt_path = csv_path;
  const auto dot = txt_path.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == txt_path.size()) txt_path.resize(dot);
  txt_path += ".txt";
  std::ofstream out(txt_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + txt_path);
  out << FormatTable(rows);
}

std::vector<StrategyRow> ReadReportCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kHeader) throw ParseError("unexpected header", 1);
  std::vector<StrategyRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = SplitCsvLine(line, line_no);
    if (f.size() != kColumns) throw ParseError("expected 14 columns", line_no);
    StrategyRow r;
    r.strategy = f[0];
    r.name = f[1];
    r.generations = ToCount(f[2], line_no);
    r.failed_cells = ToCount(f[3], line_no);
    MetricReport& m = r.report;
    m.prefixes = ToCount(f[4], line_no);
    m.distinct_4grams = ToDouble(f[5], line_no);
    m.fourgram_proportion = ToDouble(f[6], line_no);
    m.spg = ToDouble(f[7], line_no);
    m.spv = ToDouble(f[8], line_no);
    m.uspg = ToDouble(f[9], line_no);
    m.uspv = ToDouble(f[10], line_no);
    m.spv_skipped = ToCount(f[11], line_no);
    m.uspv_skipped = ToCount(f[12], line_no);
    m.proportion_skipped = ToCount(f[13], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace veridecode
