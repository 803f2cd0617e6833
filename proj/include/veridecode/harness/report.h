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

#ifndef VERIDECODE_HARNESS_REPORT_H_
#define VERIDECODE_HARNESS_REPORT_H_

#include <span>
#include <string>

#include "veridecode/harness/pipeline.h"

namespace veridecode {

// Column order: distinct 4-grams, 4-gram proportion, SPG, SPV, USPG, USPV,
// then the skip counters. Rates print as percentages with two decimals.
std::string FormatCsv(std::span<const StrategyRow> rows);
std::string FormatTable(std::span<const StrategyRow> rows);

// Writes the CSV to `csv_path` and the aligned table next to it with a .txt
// extension. Throws ConfigError for no rows, IoError if unwritable.
void WriteReport(std::span<const StrategyRow> rows, const std::string& csv_path);

// Reads a CSV written by WriteReport back into rows (rates as fractions,
// rounded to the printed precision). Throws IoError or ParseError.
std::vector<StrategyRow> ReadReportCsv(const std::string& path);

}  // namespace veridecode

#endif  // VERIDECODE_HARNESS_REPORT_H_
