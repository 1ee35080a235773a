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

#include "fbont/slicer.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fbont {

std::optional<SliceKey> ClassifyPredicate(const NodeRef &predicate) {
  switch (predicate.kind()) {
    case NodeRef::Kind::kIdPath:
      return SliceKey::Domain(std::string(predicate.path().domain()));
    case NodeRef::Kind::kExternal: {
      std::string_view local = predicate.external().LocalName();
      if (local.empty()) local = predicate.external().iri();
      return SliceKey::Owl(std::string(local));
    }
    case NodeRef::Kind::kMid:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string_view GroupName(Group group) {
  switch (group) {
    case Group::kImplementation: return "implementation";
    case Group::kOwl: return "owl";
    case Group::kSubjectMatter: return "subject_matter";
  }
  return "";
}

std::string_view GroupTitle(Group group) {
  switch (group) {
    case Group::kImplementation: return "Freebase Implementation Domains";
    case Group::kOwl: return "OWL Domains";
    case Group::kSubjectMatter: return "Subject Matter Domains";
  }
  return "";
}

std::optional<Group> ParseGroupName(std::string_view name) {
  for (Group g : {Group::kImplementation, Group::kOwl, Group::kSubjectMatter}) {
    if (GroupName(g) == name) return g;
  }
  return std::nullopt;
}

GroupConfig::GroupConfig()
    : implementation_domains{"common",   "type",         "key",  "kg",
                             "base",     "freebase",     "dataworld",
                             "topic_server", "user",     "pipeline",
                             "kp_lw"},
      owl_patterns{{"type", "rdf-syntax-ns#type"},
                   {"label", "rdf-schema#label"},
                   {"domain", "rdf-schema#domain"},
                   {"range", "rdf-schema#range"},
                   {"inverseOf", "owl#inverseOf"}} {}

Group GroupConfig::Assign(const SliceKey &key) const {
  if (key.kind == SliceKey::Kind::kOwlTerm) return Group::kOwl;
  return implementation_domains.contains(key.name) ? Group::kImplementation
                                                   : Group::kSubjectMatter;
}

std::string GroupConfig::PredicatePattern(const SliceKey &key) const {
  if (key.kind == SliceKey::Kind::kFreebaseDomain) {
    return "/" + key.name + "/*";
  }
  auto it = owl_patterns.find(key.name);
  return it != owl_patterns.end() ? it->second : "#" + key.name;
}

void MergeCounts(SliceCounts *into, const SliceCounts &from) {
  for (const auto &[key, count] : from) (*into)[key] += count;
}

uint64_t TotalCount(const SliceCounts &counts) {
  uint64_t total = 0;
  for (const auto &[key, count] : counts) total += count;
  return total;
}

// ---------------------------------------------------------------------------
// Materialization.

namespace {

std::string SafeFileName(std::string_view name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
              (c >= 'A' && c <= 'Z') || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

}  // namespace

std::filesystem::path SliceFilePath(const std::optional<SliceKey> &key,
                                    SliceLayout layout) {
  if (!key) return "unclassified.nt";
  bool owl = key->kind == SliceKey::Kind::kOwlTerm;
  std::string file = SafeFileName(key->name) + ".nt";
  if (layout == SliceLayout::kNested) {
    return std::filesystem::path(owl ? "owl" : "domain") / file;
  }
  return (owl ? "owl." : "fb.") + file;
}

class SliceCounter::Writer {
 public:
  explicit Writer(MaterializeOptions options) : options_(std::move(options)) {
    std::error_code ec;
    std::filesystem::create_directories(options_.directory, ec);
    if (ec) {
      throw IoError(options_.directory.string() + ": " + ec.message());
    }
  }

  void Append(const std::optional<SliceKey> &key, std::string_view data) {
    std::ofstream &out = Stream(key);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed for slice " + Name(key));
  }

  void Close() {
    for (auto &[key, out] : files_) {
      out->close();
      if (!*out) throw IoError("close failed for slice " + Name(key));
    }
    files_.clear();
  }

  const Namespace &ns() const { return options_.ns; }

 private:
  static std::string Name(const std::optional<SliceKey> &key) {
    return key ? key->name : "<unclassified>";
  }

  std::ofstream &Stream(const std::optional<SliceKey> &key) {
    auto it = files_.find(key);
    if (it != files_.end()) return *it->second;
    auto path = options_.directory / SliceFilePath(key, options_.layout);
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto out = std::make_unique<std::ofstream>(
        path, std::ios::binary | std::ios::trunc);
    if (ec || !*out) {
      throw IoError(path.string() + ": " + std::strerror(errno));
    }
    return *files_.emplace(key, std::move(out)).first->second;
  }

  MaterializeOptions options_;
  std::map<std::optional<SliceKey>, std::unique_ptr<std::ofstream>> files_;
};

SliceCounter::SliceCounter(MaterializeOptions materialize)
    : writer_(std::make_shared<Writer>(std::move(materialize))) {
  ns_ = writer_->ns();
}

SliceCounter::~SliceCounter() = default;

void SliceCounter::Consume(const Triple &triple) {
  std::optional<SliceKey> key = ClassifyPredicate(triple.predicate);
  if (key) {
    ++counts_[*key];
  } else {
    ++unclassified_;
  }
  if (!writer_ && !buffering_) return;
  std::string line = SerializeTriple(triple, ns_);
  line += '\n';
  if (writer_) {
    writer_->Append(key, line);
  } else {
    buffers_[key] += line;
  }
}

std::unique_ptr<TripleSink> SliceCounter::Fork() const {
  auto part = std::make_unique<SliceCounter>();
  part->buffering_ = materializing();
  part->ns_ = ns_;
  return part;
}

void SliceCounter::Absorb(TripleSink &part) {
  auto &other = static_cast<SliceCounter &>(part);
  MergeCounts(&counts_, other.counts_);
  unclassified_ += other.unclassified_;
  for (auto &[key, data] : other.buffers_) {
    if (writer_) {
      writer_->Append(key, data);
    } else {
      buffers_[key] += data;
    }
  }
  other.buffers_.clear();
}

void SliceCounter::Finish() {
  if (writer_) writer_->Close();
}

void DistinctCounter::Consume(const Triple &triple) {
  seen_.insert(SerializeTriple(triple));
}

std::unique_ptr<TripleSink> DistinctCounter::Fork() const {
  return std::make_unique<DistinctCounter>();
}

void DistinctCounter::Absorb(TripleSink &part) {
  auto &other = static_cast<DistinctCounter &>(part);
  seen_.merge(other.seen_);
  other.seen_.clear();
}

// ---------------------------------------------------------------------------
// Taxonomy.

std::string SliceStats::TotalPercent() const {
  return FormatPercentMilli(PercentMilli(triples, grand_total));
}

std::string SliceStats::GroupPercent() const {
  return FormatPercentMilli(PercentMilli(triples, group_total));
}

std::vector<SliceStats> BuildTaxonomy(const SliceCounts &counts,
                                      const GroupConfig &config) {
  std::vector<SliceStats> rows;
  std::map<Group, uint64_t> group_totals;
  uint64_t grand_total = 0;
  for (const auto &[key, count] : counts) {
    SliceStats row;
    row.key = key;
    row.group = config.Assign(key);
    row.pattern = config.PredicatePattern(key);
    row.triples = count;
    group_totals[row.group] += count;
    grand_total += count;
    rows.push_back(std::move(row));
  }
  for (auto &row : rows) {
    row.grand_total = grand_total;
    row.group_total = group_totals[row.group];
    row.total_pct = grand_total ? static_cast<double>(row.triples) /
                                      static_cast<double>(grand_total)
                                : 0.0;
    row.group_pct = row.group_total ? static_cast<double>(row.triples) /
                                          static_cast<double>(row.group_total)
                                    : 0.0;
  }
  std::sort(rows.begin(), rows.end(),
            [](const SliceStats &a, const SliceStats &b) {
              if (a.group != b.group) return a.group < b.group;
              if (a.triples != b.triples) return a.triples > b.triples;
              return a.key < b.key;
            });
  int rank = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 || rows[i].group != rows[i - 1].group) rank = 0;
    rows[i].rank = ++rank;
  }
  return rows;
}

namespace {

const Row kSliceColumns = {"group",   "name",      "predicate_pattern",
                           "triples", "total_pct", "group_pct"};

}  // namespace

std::string WriteSliceTable(const std::vector<SliceStats> &stats,
                            TableFormat format) {
  if (format == TableFormat::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &s : stats) {
      rows.push_back({{"group", GroupName(s.group)},
                      {"name", s.key.name},
                      {"predicate_pattern", s.pattern},
                      {"triples", s.triples},
                      {"total_pct", s.TotalPercent()},
                      {"group_pct", s.GroupPercent()}});
    }
    return rows.dump(2) + "\n";
  }
  if (format == TableFormat::kMarkdown) {
    throw std::invalid_argument("slice tables are written as csv, tsv or json");
  }
  char sep = format == TableFormat::kTsv ? '\t' : ',';
  std::string out = JoinRow(kSliceColumns, sep) + "\n";
  for (const auto &s : stats) {
    out += JoinRow({std::string(GroupName(s.group)), s.key.name, s.pattern,
                    std::to_string(s.triples), s.TotalPercent(),
                    s.GroupPercent()},
                   sep);
    out += "\n";
  }
  return out;
}

SliceCounts ReadSliceTable(std::string_view text, TableFormat format) {
  SliceCounts counts;
  auto add = [&](const std::string &group, const std::string &name,
                 const std::string &triples) {
    auto g = ParseGroupName(group);
    if (!g) throw std::runtime_error("unknown group '" + group + "'");
    uint64_t n = 0;
    try {
      size_t used = 0;
      n = std::stoull(triples, &used);
      if (used != triples.size()) throw std::invalid_argument(triples);
    } catch (const std::exception &) {
      throw std::runtime_error("bad triple count '" + triples + "'");
    }
    SliceKey key = *g == Group::kOwl ? SliceKey::Owl(name)
                                     : SliceKey::Domain(name);
    counts[key] += n;
  };

  if (format == TableFormat::kJson) {
    auto rows = nlohmann::json::parse(text);
    for (const auto &r : rows) {
      add(r.at("group").get<std::string>(), r.at("name").get<std::string>(),
          std::to_string(r.at("triples").get<uint64_t>()));
    }
    return counts;
  }
  char sep = format == TableFormat::kTsv ? '\t' : ',';
  auto rows = ParseDelimited(text, sep);
  if (rows.empty()) return counts;
  if (rows[0] != kSliceColumns) {
    throw std::runtime_error("unexpected slice table header");
  }
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != kSliceColumns.size()) {
      throw std::runtime_error("slice table row " + std::to_string(i) +
                               " has wrong field count");
    }
    add(rows[i][0], rows[i][1], rows[i][3]);
  }
  return counts;
}

}  // namespace fbont
