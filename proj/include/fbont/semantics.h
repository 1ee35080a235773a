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

// Freebase graph semantics: merges, value notations and incompatible
// types.
//
// Merges. A duplicate object is retired by a replaced_by edge pointing at
// the object that subsumes it. Edges may chain; MergeResolver follows a
// chain to its terminus with path compression and detects cycles.
//
// Value notations. "Has value" and "has no value" are asserted by linking
// the property to the object: /people/person/date_of_birth has_value /m/x
// says x has a birth date that is not known.
//
// Incompatibility. A rule (a, b) says no object may carry both types.

#ifndef FBONT_SEMANTICS_H_
#define FBONT_SEMANTICS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fbont/model.h"
#include "fbont/parser.h"

namespace fbont {

inline constexpr std::string_view kReplacedByPredicate =
    "/dataworld/gardening_hint/replaced_by";
inline constexpr std::string_view kHasValuePredicate =
    "/freebase/valuenotation/has_value";
inline constexpr std::string_view kHasNoValuePredicate =
    "/freebase/valuenotation/has_no_value";

// ---------------------------------------------------------------------------
// Merges.

struct MergeMap {
  // duplicate -> replacement
  std::unordered_map<Mid, Mid> edges;
  // Edges re-pointing an existing duplicate elsewhere (last writer wins).
  uint64_t conflicts = 0;
  // replaced_by triples whose endpoints are not both Mids.
  uint64_t skipped_non_mid = 0;
  // m replaced_by m.
  uint64_t self_edges = 0;

  void Add(const Mid &duplicate, const Mid &replacement);
  // Sorted (duplicate, replacement) pairs.
  std::vector<std::pair<Mid, Mid>> SortedEdges() const;
};

class MergeMapBuilder : public TripleSink {
 public:
  explicit MergeMapBuilder(
      std::string_view predicate = kReplacedByPredicate);

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  const MergeMap &map() const { return map_; }
  MergeMap &mutable_map() { return map_; }

 private:
  NodeRef predicate_;
  MergeMap map_;
  // Forks only log edges; Absorb replays them in input order so
  // last-writer-wins and the conflict count match a serial run.
  bool is_part_ = false;
  std::vector<std::pair<Mid, Mid>> log_;
};

MergeMap BuildMergeMap(const std::vector<Triple> &triples);

enum class CyclePolicy {
  kFail,            // throw CycleError
  kSmallestMember,  // canonicalize the cycle to its smallest Mid
};

class CycleError : public std::runtime_error {
 public:
  explicit CycleError(std::vector<Mid> members);
  const std::vector<Mid> &members() const { return members_; }

 private:
  std::vector<Mid> members_;
};

// Immutable duplicate -> canonical mapping, safe to share across threads.
class CanonicalMap {
 public:
  CanonicalMap() = default;
  explicit CanonicalMap(std::unordered_map<Mid, Mid> targets)
      : targets_(std::move(targets)) {}

  // Mids without an entry map to themselves.
  const Mid &Lookup(const Mid &mid) const {
    auto it = targets_.find(mid);
    return it == targets_.end() ? mid : it->second;
  }
  size_t size() const { return targets_.size(); }
  std::vector<std::pair<Mid, Mid>> SortedEntries() const;

 private:
  std::unordered_map<Mid, Mid> targets_;
};

// Resolves Mids to their canonical target. Not thread-safe: path
// compression mutates the cache. Freeze() once and share the result
// instead.
class MergeResolver {
 public:
  MergeResolver(const MergeMap &map, CyclePolicy policy = CyclePolicy::kFail);

  Mid Resolve(const Mid &mid);
  // Resolves every duplicate in the map.
  CanonicalMap Freeze();

  // Cycles canonicalized so far under kSmallestMember, each sorted.
  const std::vector<std::vector<Mid>> &cycles() const { return cycles_; }

 private:
  const MergeMap &map_;
  CyclePolicy policy_;
  std::unordered_map<Mid, Mid> cache_;
  std::vector<std::vector<Mid>> cycles_;
};

// Walks the chain without compression; fine for one-off lookups.
std::optional<Mid> WalkChain(const MergeMap &map, const Mid &mid);

struct RewriteReport {
  uint64_t triples = 0;
  uint64_t subjects_rewritten = 0;
  uint64_t objects_rewritten = 0;

  void Merge(const RewriteReport &other) {
    triples += other.triples;
    subjects_rewritten += other.subjects_rewritten;
    objects_rewritten += other.objects_rewritten;
  }
  bool operator==(const RewriteReport &) const = default;
};

// Replaces Mids in subject and object position with their canonical
// target. Predicates are untouched.
Triple RewriteCanonical(const Triple &triple, const CanonicalMap &canonical,
                        RewriteReport *report = nullptr);

// Rewrites triples on their way to a downstream sink.
class RewriteSink : public TripleSink {
 public:
  RewriteSink(std::shared_ptr<const CanonicalMap> canonical,
              TripleSink *downstream);

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  const RewriteReport &report() const { return report_; }

 private:
  std::shared_ptr<const CanonicalMap> canonical_;
  TripleSink *downstream_;
  std::unique_ptr<TripleSink> owned_downstream_;
  RewriteReport report_;
};

// Reads and writes the two-column merge TSV (duplicate_mid, canonical_mid).
std::string WriteMergeTable(const std::vector<std::pair<Mid, Mid>> &rows);
MergeMap ReadMergeTable(std::string_view tsv);

// ---------------------------------------------------------------------------
// Value notations.

enum class NotationKind { kHasValue, kHasNoValue };
enum class NotationOrientation {
  kPropertySubject,  // property has_value object
  kObjectSubject,    // object has_value property
};

std::string_view NotationKindName(NotationKind kind);
std::string_view OrientationName(NotationOrientation orientation);

struct ValueNotation {
  IdPath property;
  Mid object;
  NotationKind kind = NotationKind::kHasValue;
  NotationOrientation orientation = NotationOrientation::kPropertySubject;

  bool operator==(const ValueNotation &) const = default;
};

struct NotationOptions {
  // Also accept object-subject triples, tagging which orientation matched.
  bool accept_reversed = false;
};

class ValueNotationExtractor : public TripleSink {
 public:
  explicit ValueNotationExtractor(NotationOptions options = {});

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  const std::vector<ValueNotation> &notations() const { return notations_; }
  // Notation-predicate triples with the wrong endpoint kinds.
  uint64_t nonconforming() const { return nonconforming_; }
  uint64_t count(NotationKind kind) const;

 private:
  NotationOptions options_;
  NodeRef has_value_;
  NodeRef has_no_value_;
  std::vector<ValueNotation> notations_;
  uint64_t nonconforming_ = 0;
};

std::vector<ValueNotation> ExtractValueNotations(
    const std::vector<Triple> &triples, NotationOptions options = {});

std::string WriteNotationTable(const std::vector<ValueNotation> &notations);

// ---------------------------------------------------------------------------
// Incompatible types.

// Unordered pair of distinct types, stored with first < second.
class IncompatibilityRule {
 public:
  // Throws std::invalid_argument unless a and b are distinct types.
  IncompatibilityRule(const IdPath &a, const IdPath &b);

  const IdPath &first() const { return first_; }
  const IdPath &second() const { return second_; }

  auto operator<=>(const IncompatibilityRule &) const = default;
  bool operator==(const IncompatibilityRule &) const = default;

 private:
  IdPath first_;
  IdPath second_;
};

using RuleSet = std::set<IncompatibilityRule>;

// One rule per line: two type ids separated by a tab or comma. Blank lines
// and '#' comments are skipped. Throws std::runtime_error with the line
// number on bad input.
RuleSet ParseRules(std::string_view text);

// Collects rules asserted in the dump through a configurable predicate
// (type_a <predicate> type_b).
class RuleCollector : public TripleSink {
 public:
  explicit RuleCollector(std::string_view predicate);

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  const RuleSet &rules() const { return rules_; }
  uint64_t skipped() const { return skipped_; }

 private:
  NodeRef predicate_;
  RuleSet rules_;
  uint64_t skipped_ = 0;
};

using TypeAssertions = std::map<Mid, std::set<IdPath>>;

// Gathers (object, type) assertions from is-a triples. With a filter, only
// types in the filter are kept, which bounds memory on full dumps.
class TypeAssertionCollector : public TripleSink {
 public:
  explicit TypeAssertionCollector(
      std::vector<std::string> is_a_predicates = {"/type/object/type"},
      std::optional<std::set<IdPath>> filter = std::nullopt);

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  const TypeAssertions &assertions() const { return assertions_; }

 private:
  std::vector<NodeRef> is_a_;
  std::shared_ptr<const std::set<IdPath>> filter_;
  TypeAssertions assertions_;
};

// Types mentioned by any rule.
std::set<IdPath> RuleTypes(const RuleSet &rules);

struct Violation {
  Mid object;
  IncompatibilityRule rule;

  auto operator<=>(const Violation &) const = default;
  bool operator==(const Violation &) const = default;
};

// Every (object, rule) where the object carries both types of the rule,
// ordered by object then rule.
std::vector<Violation> CheckIncompatibilities(const TypeAssertions &assertions,
                                              const RuleSet &rules);
std::vector<Violation> CheckIncompatibilities(
    const std::vector<std::pair<Mid, IdPath>> &assertions,
    const RuleSet &rules);

// object,type_a,type_b
std::string WriteViolationTable(const std::vector<Violation> &violations);

}  // namespace fbont

#endif  // FBONT_SEMANTICS_H_
