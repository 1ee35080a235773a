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

// Human- and machine-readable renderings of slice taxonomies and the
// complexity study. Every renderer is a pure function of its input, so
// identical input gives byte-identical output.

#ifndef FBONT_REPORT_H_
#define FBONT_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbont/slicer.h"
#include "fbont/stats.h"
#include "fbont/table_io.h"

namespace fbont {

// ---------------------------------------------------------------------------
// Taxonomy tables.

enum class TaxonomyOrder {
  kGrouped,       // group, then descending triples
  kAlphabetical,  // by name, then pattern; no group header rows
};

// Six columns: No., Name, Domain, Triples, Total %, Group %. Markdown gets
// group header rows, comma-grouped counts and a '%' suffix; CSV and TSV
// carry raw integers and bare percentages. JSON is not supported here (see
// WriteSliceTable).
std::string RenderTaxonomy(const std::vector<SliceStats> &stats,
                           TableFormat format,
                           TaxonomyOrder order = TaxonomyOrder::kGrouped);

struct TaxonomyRow {
  int number = 0;
  std::string name;
  std::string pattern;
  uint64_t triples = 0;
  std::string total_pct;  // "45.658"
  std::string group_pct;

  bool operator==(const TaxonomyRow &) const = default;
};

// Reads a CSV or TSV taxonomy back. Throws std::runtime_error.
std::vector<TaxonomyRow> ReadTaxonomy(std::string_view text,
                                      TableFormat format);

// ---------------------------------------------------------------------------
// Study outputs.

struct ScatterPoint {
  std::string domain;
  double complexity = 0;  // x
  uint64_t triples = 0;   // y
  bool excluded = false;

  bool operator==(const ScatterPoint &) const = default;
};

// One point per row, ordered by domain.
std::vector<ScatterPoint> ScatterPoints(const std::vector<StudyRow> &rows,
                                        const StudyResult &result);

// domain,complexity,triples,excluded
std::string RenderScatterCsv(const std::vector<ScatterPoint> &points);
std::vector<ScatterPoint> ReadScatterCsv(std::string_view csv);

// The study result, plus the all-rows baseline when exclusions were
// applied.
std::string RenderStudyJson(const StudyResult &result,
                            const std::optional<StudyResult> &baseline);

// Data-to-pixel mapping of one scatter panel.
struct PlotLayout {
  double x_min = 0;
  double x_max = 1;
  double y_min = 0;
  double y_max = 1;
  // Plot area in pixels.
  double left = 0;
  double top = 0;
  double width = 1;
  double height = 1;

  double PixelX(double x) const;
  double PixelY(double y) const;
  double DataX(double px) const;
  double DataY(double py) const;
};

// Layout covering the points (and the origin), with a small margin.
PlotLayout FitLayout(const std::vector<ScatterPoint> &points, double left,
                     double top, double width, double height);

// Standalone SVG. With a baseline the image has two panels: every row with
// the baseline fit, then the kept rows with the filtered fit. Excluded
// points are drawn hollow. The <metadata> element holds the fitted line of
// each panel as JSON.
std::string RenderScatterSvg(const std::vector<ScatterPoint> &points,
                             const StudyResult &result,
                             const std::optional<StudyResult> &baseline);

}  // namespace fbont

#endif  // FBONT_REPORT_H_
