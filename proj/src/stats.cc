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

#include "fbont/stats.h"

#include <algorithm>
#include <cmath>

namespace fbont {

namespace {

class Accumulator {
 public:
  void Add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

struct Moments {
  double sxx = 0;
  double syy = 0;
  double sxy = 0;
  double mean_x = 0;
  double mean_y = 0;
};

void CheckShape(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw StatsError(StatsError::Code::kLengthMismatch,
                     "length mismatch: " + std::to_string(xs.size()) +
                         " vs " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) {
    throw StatsError(StatsError::Code::kTooFewPoints,
                     "need at least two points");
  }
}

// Two passes: compensated means, then centred sums of squares and
// products.
Moments CentredMoments(std::span<const double> xs,
                       std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  Moments m;
  m.mean_x = CompensatedSum(xs) / n;
  m.mean_y = CompensatedSum(ys) / n;
  Accumulator sxx, syy, sxy;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - m.mean_x;
    double dy = ys[i] - m.mean_y;
    sxx.Add(dx * dx);
    syy.Add(dy * dy);
    sxy.Add(dx * dy);
  }
  m.sxx = sxx.value();
  m.syy = syy.value();
  m.sxy = sxy.value();
  return m;
}

bool IsConstant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
}

}  // namespace

double CompensatedSum(std::span<const double> values) {
  Accumulator acc;
  for (double v : values) acc.Add(v);
  return acc.value();
}

double PearsonR(std::span<const double> xs, std::span<const double> ys) {
  CheckShape(xs, ys);
  if (IsConstant(xs) || IsConstant(ys)) {
    throw StatsError(StatsError::Code::kConstantInput,
                     "correlation undefined for constant input");
  }
  Moments m = CentredMoments(xs, ys);
  double r = m.sxy / std::sqrt(m.sxx * m.syy);
  return std::clamp(r, -1.0, 1.0);
}

LinearFit LinearRegression(std::span<const double> xs,
                           std::span<const double> ys) {
  CheckShape(xs, ys);
  if (IsConstant(xs)) {
    throw StatsError(StatsError::Code::kConstantInput,
                     "regression undefined for constant x");
  }
  Moments m = CentredMoments(xs, ys);
  LinearFit fit;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;
  return fit;
}

StudyResult RunStudy(const std::vector<StudyRow> &rows,
                     const std::set<std::string> &exclusions) {
  // Sorting by domain makes the result independent of row order down to the
  // last bit.
  std::vector<const StudyRow *> kept;
  StudyResult result;
  std::set<std::string> matched;
  for (const auto &row : rows) {
    if (exclusions.contains(row.domain)) {
      matched.insert(row.domain);
    } else {
      kept.push_back(&row);
    }
  }
  std::sort(kept.begin(), kept.end(), [](const StudyRow *a, const StudyRow *b) {
    if (a->domain != b->domain) return a->domain < b->domain;
    if (a->complexity != b->complexity) return a->complexity < b->complexity;
    return a->triple_count < b->triple_count;
  });
  result.excluded.assign(matched.begin(), matched.end());
  for (const auto &name : exclusions) {
    if (!matched.contains(name)) result.unknown_exclusions.push_back(name);
  }

  if (kept.size() < 2) {
    throw StatsError(StatsError::Code::kTooFewPoints,
                     "study needs at least two rows, have " +
                         std::to_string(kept.size()));
  }
  std::vector<double> xs, ys;
  for (const StudyRow *row : kept) {
    xs.push_back(row->complexity);
    ys.push_back(static_cast<double>(row->triple_count));
  }
  result.n = kept.size();
  result.pearson_r = PearsonR(xs, ys);
  LinearFit fit = LinearRegression(xs, ys);
  result.slope = fit.slope;
  result.intercept = fit.intercept;
  return result;
}

}  // namespace fbont
