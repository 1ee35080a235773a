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

#include "fbont/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace fbont {

namespace {

const Row kTaxonomyColumns = {"No.",     "Name",    "Domain",
                              "Triples", "Total %", "Group %"};

std::string MarkdownCell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string MarkdownRow(const Row &cells) {
  std::string out = "|";
  for (const auto &cell : cells) out += " " + MarkdownCell(cell) + " |";
  return out + "\n";
}

std::vector<const SliceStats *> Ordered(const std::vector<SliceStats> &stats,
                                        TaxonomyOrder order) {
  std::vector<const SliceStats *> rows;
  for (const auto &s : stats) rows.push_back(&s);
  if (order == TaxonomyOrder::kAlphabetical) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SliceStats *a, const SliceStats *b) {
                       if (a->key.name != b->key.name) {
                         return a->key.name < b->key.name;
                       }
                       return a->pattern < b->pattern;
                     });
  }
  return rows;
}

uint64_t ParseUnsigned(const std::string &field, const char *what) {
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error(std::string("bad ") + what + " '" + field + "'");
  }
  return value;
}

double ParseDouble(const std::string &field, const char *what) {
  double value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error(std::string("bad ") + what + " '" + field + "'");
  }
  return value;
}

}  // namespace

std::string RenderTaxonomy(const std::vector<SliceStats> &stats,
                           TableFormat format, TaxonomyOrder order) {
  auto rows = Ordered(stats, order);
  std::string out;
  if (format == TableFormat::kMarkdown) {
    out += MarkdownRow(kTaxonomyColumns);
    out += "|---:|---|---|---:|---:|---:|\n";
    std::optional<Group> current;
    int number = 0;
    for (const SliceStats *s : rows) {
      if (order == TaxonomyOrder::kGrouped) {
        if (current != s->group) {
          current = s->group;
          out += "| *" + std::string(GroupTitle(s->group)) +
                 "* | | | | | |\n";
        }
        number = s->rank;
      } else {
        ++number;
      }
      out += MarkdownRow({std::to_string(number), s->key.name, s->pattern,
                          GroupThousands(s->triples),
                          s->TotalPercent() + "%", s->GroupPercent() + "%"});
    }
    return out;
  }
  if (format != TableFormat::kCsv && format != TableFormat::kTsv) {
    throw std::invalid_argument("taxonomy renders as md, csv or tsv");
  }
  char sep = format == TableFormat::kCsv ? ',' : '\t';
  out += JoinRow(kTaxonomyColumns, sep) + "\n";
  int number = 0;
  for (const SliceStats *s : rows) {
    number = order == TaxonomyOrder::kGrouped ? s->rank : number + 1;
    out += JoinRow({std::to_string(number), s->key.name, s->pattern,
                    std::to_string(s->triples), s->TotalPercent(),
                    s->GroupPercent()},
                   sep);
    out += "\n";
  }
  return out;
}

std::vector<TaxonomyRow> ReadTaxonomy(std::string_view text,
                                      TableFormat format) {
  if (format != TableFormat::kCsv && format != TableFormat::kTsv) {
    throw std::invalid_argument("only csv and tsv taxonomies can be read");
  }
  auto table = ParseDelimited(text, format == TableFormat::kCsv ? ',' : '\t');
  std::vector<TaxonomyRow> rows;
  if (table.empty()) return rows;
  if (table[0] != kTaxonomyColumns) {
    throw std::runtime_error("unexpected taxonomy header");
  }
  for (size_t i = 1; i < table.size(); ++i) {
    const Row &r = table[i];
    if (r.size() != kTaxonomyColumns.size()) {
      throw std::runtime_error("taxonomy row " + std::to_string(i) +
                               " has wrong field count");
    }
    TaxonomyRow row;
    row.number = static_cast<int>(ParseUnsigned(r[0], "row number"));
    row.name = r[1];
    row.pattern = r[2];
    row.triples = ParseUnsigned(r[3], "triple count");
    row.total_pct = r[4];
    row.group_pct = r[5];
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::vector<ScatterPoint> ScatterPoints(const std::vector<StudyRow> &rows,
                                        const StudyResult &result) {
  std::vector<ScatterPoint> points;
  for (const auto &row : rows) {
    bool excluded = std::binary_search(result.excluded.begin(),
                                       result.excluded.end(), row.domain);
    points.push_back({row.domain, row.complexity, row.triple_count, excluded});
  }
  std::sort(points.begin(), points.end(),
            [](const ScatterPoint &a, const ScatterPoint &b) {
              if (a.domain != b.domain) return a.domain < b.domain;
              if (a.complexity != b.complexity) {
                return a.complexity < b.complexity;
              }
              return a.triples < b.triples;
            });
  return points;
}

std::string RenderScatterCsv(const std::vector<ScatterPoint> &points) {
  std::string out = "domain,complexity,triples,excluded\n";
  for (const auto &p : points) {
    out += JoinRow({p.domain, FormatDouble(p.complexity),
                    std::to_string(p.triples), p.excluded ? "1" : "0"},
                   ',');
    out += "\n";
  }
  return out;
}

std::vector<ScatterPoint> ReadScatterCsv(std::string_view csv) {
  auto table = ParseDelimited(csv, ',');
  std::vector<ScatterPoint> points;
  if (table.empty()) return points;
  if (table[0] != Row{"domain", "complexity", "triples", "excluded"}) {
    throw std::runtime_error("unexpected scatter header");
  }
  for (size_t i = 1; i < table.size(); ++i) {
    const Row &r = table[i];
    if (r.size() != 4 || (r[3] != "0" && r[3] != "1")) {
      throw std::runtime_error("bad scatter row " + std::to_string(i));
    }
    points.push_back({r[0], ParseDouble(r[1], "complexity"),
                      ParseUnsigned(r[2], "triple count"), r[3] == "1"});
  }
  return points;
}

namespace {

nlohmann::ordered_json ResultJson(const StudyResult &r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["pearson_r"] = r.pearson_r;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["excluded"] = r.excluded;
  j["unknown_exclusions"] = r.unknown_exclusions;
  return j;
}

}  // namespace

std::string RenderStudyJson(const StudyResult &result,
                            const std::optional<StudyResult> &baseline) {
  nlohmann::ordered_json j;
  j["x"] = "complexity_score";
  j["y"] = "triple_count";
  j["result"] = ResultJson(result);
  if (baseline) j["baseline"] = ResultJson(*baseline);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SVG.

double PlotLayout::PixelX(double x) const {
  return left + (x - x_min) / (x_max - x_min) * width;
}

double PlotLayout::PixelY(double y) const {
  return top + height - (y - y_min) / (y_max - y_min) * height;
}

double PlotLayout::DataX(double px) const {
  return x_min + (px - left) / width * (x_max - x_min);
}

double PlotLayout::DataY(double py) const {
  return y_min + (top + height - py) / height * (y_max - y_min);
}

PlotLayout FitLayout(const std::vector<ScatterPoint> &points, double left,
                     double top, double width, double height) {
  PlotLayout layout;
  layout.left = left;
  layout.top = top;
  layout.width = width;
  layout.height = height;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  for (const auto &p : points) {
    x_lo = std::min(x_lo, p.complexity);
    x_hi = std::max(x_hi, p.complexity);
    y_hi = std::max(y_hi, static_cast<double>(p.triples));
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= y_lo) y_hi = y_lo + 1;
  layout.x_min = x_lo;
  layout.x_max = x_hi + (x_hi - x_lo) * 0.05;
  layout.y_min = y_lo;
  layout.y_max = y_hi + (y_hi - y_lo) * 0.05;
  return layout;
}

namespace {

constexpr double kPanelWidth = 480;
constexpr double kPanelHeight = 360;
constexpr double kMarginLeft = 72;
constexpr double kMarginRight = 16;
constexpr double kMarginTop = 36;
constexpr double kMarginBottom = 48;

std::string Px(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string TickLabel(double v) {
  char buffer[32];
  if (v != 0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3)) {
    std::snprintf(buffer, sizeof(buffer), "%.2g", v);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%g", v);
  }
  return buffer;
}

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Roughly five round-number ticks within [lo, hi].
std::vector<double> Ticks(double lo, double hi) {
  double span = hi - lo;
  double raw = span / 5;
  double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9;
       t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::string FitText(const std::string &label, const StudyResult &r) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "%s (n=%zu, r=%.4f, slope=%.2f)",
                label.c_str(), r.n, r.pearson_r, r.slope);
  return buffer;
}

void RenderPanel(std::string *out, int index, double offset_x,
                 const std::vector<ScatterPoint> &points,
                 const StudyResult &fit, const std::string &title) {
  PlotLayout layout =
      FitLayout(points, offset_x + kMarginLeft, kMarginTop,
                kPanelWidth - kMarginLeft - kMarginRight,
                kPanelHeight - kMarginTop - kMarginBottom);
  std::string clip = "plot" + std::to_string(index);
  std::string &o = *out;
  o += "<g class=\"panel\" id=\"panel" + std::to_string(index) + "\">\n";
  o += "<clipPath id=\"" + clip + "\"><rect x=\"" + Px(layout.left) +
       "\" y=\"" + Px(layout.top) + "\" width=\"" + Px(layout.width) +
       "\" height=\"" + Px(layout.height) + "\"/></clipPath>\n";
  o += "<text x=\"" + Px(offset_x + kPanelWidth / 2) +
       "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" +
       XmlEscape(title) + "</text>\n";
  o += "<rect x=\"" + Px(layout.left) + "\" y=\"" + Px(layout.top) +
       "\" width=\"" + Px(layout.width) + "\" height=\"" + Px(layout.height) +
       "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (double t : Ticks(layout.x_min, layout.x_max)) {
    double px = layout.PixelX(t);
    double base = layout.top + layout.height;
    o += "<line x1=\"" + Px(px) + "\" y1=\"" + Px(base) + "\" x2=\"" +
         Px(px) + "\" y2=\"" + Px(base + 4) + "\" stroke=\"#333\"/>";
    o += "<text x=\"" + Px(px) + "\" y=\"" + Px(base + 16) +
         "\" text-anchor=\"middle\" font-size=\"10\">" + TickLabel(t) +
         "</text>\n";
  }
  for (double t : Ticks(layout.y_min, layout.y_max)) {
    double py = layout.PixelY(t);
    o += "<line x1=\"" + Px(layout.left - 4) + "\" y1=\"" + Px(py) +
         "\" x2=\"" + Px(layout.left) + "\" y2=\"" + Px(py) +
         "\" stroke=\"#333\"/>";
    o += "<text x=\"" + Px(layout.left - 6) + "\" y=\"" + Px(py + 3) +
         "\" text-anchor=\"end\" font-size=\"10\">" + TickLabel(t) +
         "</text>\n";
  }
  o += "<text x=\"" + Px(layout.left + layout.width / 2) + "\" y=\"" +
       Px(kPanelHeight - 10) +
       "\" text-anchor=\"middle\" font-size=\"12\">complexity score</text>\n";
  double ly = layout.top + layout.height / 2;
  o += "<text x=\"" + Px(offset_x + 14) + "\" y=\"" + Px(ly) +
       "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " +
       Px(offset_x + 14) + " " + Px(ly) + ")\">triples count</text>\n";

  for (const auto &p : points) {
    o += "<circle cx=\"" + Px(layout.PixelX(p.complexity)) + "\" cy=\"" +
         Px(layout.PixelY(static_cast<double>(p.triples))) + "\" r=\"3\"";
    if (p.excluded) {
      o += " class=\"excluded\" fill=\"none\" stroke=\"#c0392b\"";
    } else {
      o += " class=\"kept\" fill=\"#2c7fb8\"";
    }
    o += "><title>" + XmlEscape(p.domain) + "</title></circle>\n";
  }

  double y0 = fit.intercept + fit.slope * layout.x_min;
  double y1 = fit.intercept + fit.slope * layout.x_max;
  o += "<line class=\"fit\" clip-path=\"url(#" + clip + ")\" x1=\"" +
       Px(layout.PixelX(layout.x_min)) + "\" y1=\"" + Px(layout.PixelY(y0)) +
       "\" x2=\"" + Px(layout.PixelX(layout.x_max)) + "\" y2=\"" +
       Px(layout.PixelY(y1)) + "\" stroke=\"#d95f02\" stroke-width=\"1.5\"/>\n";
  o += "</g>\n";
}

nlohmann::ordered_json PanelMeta(const std::string &name,
                                 const StudyResult &r) {
  nlohmann::ordered_json j;
  j["panel"] = name;
  j["n"] = r.n;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["r"] = r.pearson_r;
  return j;
}

}  // namespace

std::string RenderScatterSvg(const std::vector<ScatterPoint> &points,
                             const StudyResult &result,
                             const std::optional<StudyResult> &baseline) {
  int panels = baseline ? 2 : 1;
  double total_width = kPanelWidth * panels;

  nlohmann::ordered_json meta = nlohmann::ordered_json::array();
  if (baseline) meta.push_back(PanelMeta("all", *baseline));
  meta.push_back(PanelMeta(baseline ? "filtered" : "all", result));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         Px(total_width) + "\" height=\"" + Px(kPanelHeight) +
         "\" viewBox=\"0 0 " + Px(total_width) + " " + Px(kPanelHeight) +
         "\" font-family=\"sans-serif\">\n";
  out += "<metadata>" + XmlEscape(meta.dump()) + "</metadata>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (baseline) {
    std::vector<ScatterPoint> kept;
    for (const auto &p : points) {
      if (!p.excluded) kept.push_back(p);
    }
    std::string without = "without";
    for (size_t i = 0; i < result.excluded.size(); ++i) {
      without += (i ? ", " : " ") + result.excluded[i];
    }
    RenderPanel(&out, 0, 0, points, *baseline, FitText("all", *baseline));
    RenderPanel(&out, 1, kPanelWidth, kept, result, FitText(without, result));
  } else {
    RenderPanel(&out, 0, 0, points, result, FitText("all", result));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fbont
