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

// Predicate-domain slicing and the three-group domain taxonomy.
//
// A slice is the set of triples whose predicate lives under one Freebase
// domain (/people/*) or is one external vocabulary term (rdf-schema#label).
// Counting is a commutative monoid over SliceKey -> count, so partition
// counts merge by key-wise addition.

#ifndef FBONT_SLICER_H_
#define FBONT_SLICER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fbont/model.h"
#include "fbont/parser.h"
#include "fbont/table_io.h"

namespace fbont {

struct SliceKey {
  enum class Kind { kFreebaseDomain, kOwlTerm };

  Kind kind = Kind::kFreebaseDomain;
  std::string name;

  static SliceKey Domain(std::string name) {
    return {Kind::kFreebaseDomain, std::move(name)};
  }
  static SliceKey Owl(std::string name) {
    return {Kind::kOwlTerm, std::move(name)};
  }

  auto operator<=>(const SliceKey &) const = default;
  bool operator==(const SliceKey &) const = default;
};

// Domain for IdPath predicates, local name for external IRIs, nullopt for
// Mid predicates (which never name a relation).
std::optional<SliceKey> ClassifyPredicate(const NodeRef &predicate);

enum class Group { kImplementation, kOwl, kSubjectMatter };

std::string_view GroupName(Group group);   // "implementation", ...
std::string_view GroupTitle(Group group);  // "Freebase Implementation Domains"
std::optional<Group> ParseGroupName(std::string_view name);

// Group membership. Defaults reproduce the published taxonomy of the 2016
// Freebase dump; other dumps can override them.
struct GroupConfig {
  GroupConfig();

  // Freebase domains that implement the system rather than a subject.
  std::set<std::string> implementation_domains;
  // Display pattern for known external terms, keyed by local name.
  std::map<std::string, std::string> owl_patterns;

  // Every external term is Owl; Freebase domains are Implementation when
  // listed and SubjectMatter otherwise.
  Group Assign(const SliceKey &key) const;
  // "/people/*" or "rdf-schema#label".
  std::string PredicatePattern(const SliceKey &key) const;
};

using SliceCounts = std::map<SliceKey, uint64_t>;

void MergeCounts(SliceCounts *into, const SliceCounts &from);
uint64_t TotalCount(const SliceCounts &counts);

enum class SliceLayout {
  kNested,  // domain/<name>.nt, owl/<name>.nt, unclassified.nt
  kFlat,    // fb.<name>.nt, owl.<name>.nt, unclassified.nt
};

struct MaterializeOptions {
  std::filesystem::path directory;
  SliceLayout layout = SliceLayout::kNested;
  Namespace ns;
};

// Relative path of a slice file under the materialization directory.
// nullopt key means the unclassified bucket.
std::filesystem::path SliceFilePath(const std::optional<SliceKey> &key,
                                    SliceLayout layout);

// Counts triples per slice and optionally writes each slice as an N-Triples
// file. Triples whose predicate cannot be classified are counted in
// unclassified() and, when materializing, written to their own file so the
// slice files always partition the input.
class SliceCounter : public TripleSink {
 public:
  SliceCounter() = default;
  explicit SliceCounter(MaterializeOptions materialize);
  ~SliceCounter() override;

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  // Flushes and closes slice files. Throws IoError.
  void Finish();

  const SliceCounts &counts() const { return counts_; }
  uint64_t unclassified() const { return unclassified_; }
  bool materializing() const { return writer_ != nullptr || buffering_; }

 private:
  class Writer;

  SliceCounts counts_;
  uint64_t unclassified_ = 0;
  std::shared_ptr<Writer> writer_;
  // Forks of a materializing counter buffer serialized lines per slice.
  bool buffering_ = false;
  Namespace ns_;
  std::map<std::optional<SliceKey>, std::string> buffers_;
};

// Counts distinct triples (by canonical serialization). Memory grows with
// the number of distinct triples, so this is opt-in.
class DistinctCounter : public TripleSink {
 public:
  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  uint64_t distinct() const { return seen_.size(); }

 private:
  std::unordered_set<std::string> seen_;
};

struct SliceStats {
  SliceKey key;
  Group group = Group::kSubjectMatter;
  std::string pattern;
  uint64_t triples = 0;
  uint64_t grand_total = 0;
  uint64_t group_total = 0;
  double total_pct = 0;  // fraction of grand_total
  double group_pct = 0;  // fraction of group_total
  int rank = 0;          // 1-based position within its group

  // Percentages to three decimals, rounded half to even.
  std::string TotalPercent() const;
  std::string GroupPercent() const;
};

// Rows ordered by group, then descending triples, then name.
std::vector<SliceStats> BuildTaxonomy(const SliceCounts &counts,
                                      const GroupConfig &config = {});

// Machine-readable slice table with columns
// group, name, predicate_pattern, triples, total_pct, group_pct.
std::string WriteSliceTable(const std::vector<SliceStats> &stats,
                            TableFormat format);
// Reads the CSV/TSV/JSON written above back into counts. Throws
// std::runtime_error on malformed input.
SliceCounts ReadSliceTable(std::string_view text, TableFormat format);

}  // namespace fbont

#endif  // FBONT_SLICER_H_
