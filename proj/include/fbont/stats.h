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

// Correlation between domain size and schema complexity.
//
// Each study row pairs a subject-matter domain's complexity score (x) with
// its triple count (y). The axis order is fixed: a slope in triples per unit
// of complexity is what makes the published magnitude (tens of thousands)
// meaningful, so x is never the count.

#ifndef FBONT_STATS_H_
#define FBONT_STATS_H_

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbont {

class StatsError : public std::domain_error {
 public:
  enum class Code { kLengthMismatch, kTooFewPoints, kConstantInput };
  StatsError(Code code, const std::string &what)
      : std::domain_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Neumaier-compensated sum.
double CompensatedSum(std::span<const double> values);

// Sample Pearson correlation. Throws StatsError on mismatched lengths,
// fewer than two points, or a constant input.
double PearsonR(std::span<const double> xs, std::span<const double> ys);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};

// Least-squares fit of ys on xs. Throws StatsError when xs is constant.
LinearFit LinearRegression(std::span<const double> xs,
                           std::span<const double> ys);

struct StudyRow {
  std::string domain;
  uint64_t triple_count = 0;
  double complexity = 0;
};

struct StudyResult {
  size_t n = 0;
  double pearson_r = 0;
  double slope = 0;
  double intercept = 0;
  std::vector<std::string> excluded;  // sorted names actually removed
  std::vector<std::string> unknown_exclusions;  // requested but absent
};

// Runs the correlation over rows minus exclusions. Throws StatsError with
// kTooFewPoints when fewer than two rows remain.
StudyResult RunStudy(const std::vector<StudyRow> &rows,
                     const std::set<std::string> &exclusions = {});

}  // namespace fbont

#endif  // FBONT_STATS_H_
