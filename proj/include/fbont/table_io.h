// Copyright 2026 The fbont Authors.
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

// Delimited-text and file helpers shared by the table writers.

#ifndef FBONT_TABLE_IO_H_
#define FBONT_TABLE_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fbont {

enum class TableFormat { kCsv, kTsv, kMarkdown, kJson };

std::optional<TableFormat> ParseTableFormat(std::string_view name);
std::string_view Extension(TableFormat format);

using Row = std::vector<std::string>;

// Joins fields with ',' (RFC 4180 quoting) or '\t' (fields must not contain
// tabs or newlines; they are replaced by spaces).
std::string JoinRow(const Row &fields, char separator);

// Splits delimited text into rows. CSV honours double-quote quoting; TSV is
// split verbatim. A trailing newline does not produce an empty row.
std::vector<Row> ParseDelimited(std::string_view text, char separator);

// Shortest representation that round-trips through strtod, with ".0"
// appended to integral values ("2.0", "0.25", "1e+300").
std::string FormatDouble(double value);

// 1234567 -> "1,234,567".
std::string GroupThousands(uint64_t value);

// Rounds count / total to a percentage with three decimals, ties to even,
// using exact integer arithmetic. Returns thousandths of a percent.
uint64_t PercentMilli(uint64_t count, uint64_t total);
// "45.658"
std::string FormatPercentMilli(uint64_t milli);

std::string ReadFile(const std::string &path);
// Writes atomically enough for our purposes: truncate then write. Throws
// IoError.
void WriteFile(const std::string &path, std::string_view content);

}  // namespace fbont

#endif  // FBONT_TABLE_IO_H_
