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

#include "fbont/semantics.h"

#include <algorithm>

#include "fbont/table_io.h"

namespace fbont {

namespace {

NodeRef MustParse(std::string_view rendered) {
  auto ref = NodeRef::Parse(rendered);
  if (!ref) {
    throw std::invalid_argument("bad predicate: " + std::string(rendered));
  }
  return *ref;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Merges.

void MergeMap::Add(const Mid &duplicate, const Mid &replacement) {
  if (duplicate == replacement) {
    ++self_edges;
    return;
  }
  auto [it, inserted] = edges.try_emplace(duplicate, replacement);
  if (!inserted && it->second != replacement) {
    ++conflicts;
    it->second = replacement;
  }
}

std::vector<std::pair<Mid, Mid>> MergeMap::SortedEdges() const {
  std::vector<std::pair<Mid, Mid>> out(edges.begin(), edges.end());
  std::sort(out.begin(), out.end());
  return out;
}

MergeMapBuilder::MergeMapBuilder(std::string_view predicate)
    : predicate_(MustParse(predicate)) {}

void MergeMapBuilder::Consume(const Triple &triple) {
  if (triple.predicate != predicate_) return;
  const NodeRef *object = triple.object_ref();
  if (!triple.subject.is_mid() || object == nullptr || !object->is_mid()) {
    ++map_.skipped_non_mid;
    return;
  }
  if (is_part_) {
    log_.emplace_back(triple.subject.mid(), object->mid());
  } else {
    map_.Add(triple.subject.mid(), object->mid());
  }
}

std::unique_ptr<TripleSink> MergeMapBuilder::Fork() const {
  auto part = std::make_unique<MergeMapBuilder>(*this);
  part->map_ = {};
  part->log_.clear();
  part->is_part_ = true;
  return part;
}

void MergeMapBuilder::Absorb(TripleSink &part) {
  auto &other = static_cast<MergeMapBuilder &>(part);
  for (const auto &[dup, rep] : other.log_) map_.Add(dup, rep);
  map_.skipped_non_mid += other.map_.skipped_non_mid;
  other.log_.clear();
}

MergeMap BuildMergeMap(const std::vector<Triple> &triples) {
  MergeMapBuilder builder;
  for (const auto &t : triples) builder.Consume(t);
  return builder.map();
}

namespace {

std::string DescribeCycle(const std::vector<Mid> &members) {
  std::string out = "merge cycle:";
  for (const auto &m : members) out += " " + m.Render() + " ->";
  if (!members.empty()) out += " " + members.front().Render();
  return out;
}

}  // namespace

CycleError::CycleError(std::vector<Mid> members)
    : std::runtime_error(DescribeCycle(members)), members_(std::move(members)) {}

std::vector<std::pair<Mid, Mid>> CanonicalMap::SortedEntries() const {
  std::vector<std::pair<Mid, Mid>> out(targets_.begin(), targets_.end());
  std::sort(out.begin(), out.end());
  return out;
}

MergeResolver::MergeResolver(const MergeMap &map, CyclePolicy policy)
    : map_(map), policy_(policy) {}

Mid MergeResolver::Resolve(const Mid &mid) {
  std::vector<Mid> path;
  std::unordered_map<Mid, size_t> on_path;
  Mid current = mid;
  Mid target;
  while (true) {
    if (auto hit = cache_.find(current); hit != cache_.end()) {
      target = hit->second;
      break;
    }
    auto edge = map_.edges.find(current);
    if (edge == map_.edges.end()) {
      target = current;
      break;
    }
    if (auto seen = on_path.find(current); seen != on_path.end()) {
      std::vector<Mid> cycle(path.begin() + seen->second, path.end());
      auto smallest = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), smallest, cycle.end());
      if (policy_ == CyclePolicy::kFail) throw CycleError(cycle);
      target = cycle.front();
      std::sort(cycle.begin(), cycle.end());
      cycles_.push_back(cycle);
      break;
    }
    on_path.emplace(current, path.size());
    path.push_back(current);
    current = edge->second;
  }
  for (const auto &m : path) cache_[m] = target;
  return target;
}

CanonicalMap MergeResolver::Freeze() {
  std::unordered_map<Mid, Mid> targets;
  for (const auto &[dup, rep] : map_.SortedEdges()) {
    Mid target = Resolve(dup);
    if (target != dup) targets.emplace(dup, std::move(target));
  }
  return CanonicalMap(std::move(targets));
}

std::optional<Mid> WalkChain(const MergeMap &map, const Mid &mid) {
  Mid current = mid;
  for (size_t steps = 0; steps <= map.edges.size(); ++steps) {
    auto edge = map.edges.find(current);
    if (edge == map.edges.end()) return current;
    current = edge->second;
  }
  return std::nullopt;
}

Triple RewriteCanonical(const Triple &triple, const CanonicalMap &canonical,
                        RewriteReport *report) {
  Triple out = triple;
  bool subject = false;
  bool object = false;
  if (const Mid *m = triple.subject.if_mid()) {
    const Mid &target = canonical.Lookup(*m);
    if (target != *m) {
      out.subject = target;
      subject = true;
    }
  }
  if (const NodeRef *ref = triple.object_ref()) {
    if (const Mid *m = ref->if_mid()) {
      const Mid &target = canonical.Lookup(*m);
      if (target != *m) {
        out.object = NodeRef(target);
        object = true;
      }
    }
  }
  if (report) {
    ++report->triples;
    report->subjects_rewritten += subject;
    report->objects_rewritten += object;
  }
  return out;
}

RewriteSink::RewriteSink(std::shared_ptr<const CanonicalMap> canonical,
                         TripleSink *downstream)
    : canonical_(std::move(canonical)), downstream_(downstream) {}

void RewriteSink::Consume(const Triple &triple) {
  downstream_->Consume(RewriteCanonical(triple, *canonical_, &report_));
}

std::unique_ptr<TripleSink> RewriteSink::Fork() const {
  auto down = downstream_->Fork();
  auto part = std::make_unique<RewriteSink>(canonical_, down.get());
  part->owned_downstream_ = std::move(down);
  return part;
}

void RewriteSink::Absorb(TripleSink &part) {
  auto &other = static_cast<RewriteSink &>(part);
  report_.Merge(other.report_);
  downstream_->Absorb(*other.downstream_);
}

std::string WriteMergeTable(const std::vector<std::pair<Mid, Mid>> &rows) {
  std::string out = "duplicate_mid\tcanonical_mid\n";
  for (const auto &[dup, canonical] : rows) {
    out += dup.Render() + "\t" + canonical.Render() + "\n";
  }
  return out;
}

MergeMap ReadMergeTable(std::string_view tsv) {
  MergeMap map;
  auto rows = ParseDelimited(tsv, '\t');
  for (size_t i = 0; i < rows.size(); ++i) {
    const Row &r = rows[i];
    if (i == 0 && r == Row{"duplicate_mid", "canonical_mid"}) continue;
    if (r.size() == 1 && r[0].empty()) continue;
    auto parse = [&](const std::string &field) {
      auto ref = NodeRef::Parse(Trim(field));
      if (!ref || !ref->is_mid()) {
        throw std::runtime_error("merge table line " + std::to_string(i + 1) +
                                 ": not a mid: '" + field + "'");
      }
      return ref->mid();
    };
    if (r.size() != 2) {
      throw std::runtime_error("merge table line " + std::to_string(i + 1) +
                               ": expected two columns");
    }
    map.Add(parse(r[0]), parse(r[1]));
  }
  return map;
}

// ---------------------------------------------------------------------------
// Value notations.

std::string_view NotationKindName(NotationKind kind) {
  return kind == NotationKind::kHasValue ? "HasValue" : "HasNoValue";
}

std::string_view OrientationName(NotationOrientation orientation) {
  return orientation == NotationOrientation::kPropertySubject
             ? "property_subject"
             : "object_subject";
}

ValueNotationExtractor::ValueNotationExtractor(NotationOptions options)
    : options_(options),
      has_value_(MustParse(kHasValuePredicate)),
      has_no_value_(MustParse(kHasNoValuePredicate)) {}

void ValueNotationExtractor::Consume(const Triple &triple) {
  NotationKind kind;
  if (triple.predicate == has_value_) {
    kind = NotationKind::kHasValue;
  } else if (triple.predicate == has_no_value_) {
    kind = NotationKind::kHasNoValue;
  } else {
    return;
  }
  const NodeRef *object = triple.object_ref();
  if (object != nullptr) {
    if (triple.subject.is_path() && object->is_mid()) {
      notations_.push_back({triple.subject.path(), object->mid(), kind,
                            NotationOrientation::kPropertySubject});
      return;
    }
    if (options_.accept_reversed && triple.subject.is_mid() &&
        object->is_path()) {
      notations_.push_back({object->path(), triple.subject.mid(), kind,
                            NotationOrientation::kObjectSubject});
      return;
    }
  }
  ++nonconforming_;
}

std::unique_ptr<TripleSink> ValueNotationExtractor::Fork() const {
  return std::make_unique<ValueNotationExtractor>(options_);
}

void ValueNotationExtractor::Absorb(TripleSink &part) {
  auto &other = static_cast<ValueNotationExtractor &>(part);
  notations_.insert(notations_.end(), other.notations_.begin(),
                    other.notations_.end());
  nonconforming_ += other.nonconforming_;
  other.notations_.clear();
}

uint64_t ValueNotationExtractor::count(NotationKind kind) const {
  return std::count_if(notations_.begin(), notations_.end(),
                       [&](const ValueNotation &n) { return n.kind == kind; });
}

std::vector<ValueNotation> ExtractValueNotations(
    const std::vector<Triple> &triples, NotationOptions options) {
  ValueNotationExtractor extractor(options);
  for (const auto &t : triples) extractor.Consume(t);
  return extractor.notations();
}

std::string WriteNotationTable(const std::vector<ValueNotation> &notations) {
  std::string out = "property,object,kind,orientation\n";
  for (const auto &n : notations) {
    out += JoinRow({n.property.Render(), n.object.Render(),
                    std::string(NotationKindName(n.kind)),
                    std::string(OrientationName(n.orientation))},
                   ',');
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Incompatible types.

IncompatibilityRule::IncompatibilityRule(const IdPath &a, const IdPath &b) {
  if (!a.is_type() || !b.is_type()) {
    throw std::invalid_argument("incompatibility rules relate types: " +
                                a.Render() + ", " + b.Render());
  }
  if (a == b) {
    throw std::invalid_argument("type cannot be incompatible with itself: " +
                                a.Render());
  }
  first_ = std::min(a, b);
  second_ = std::max(a, b);
}

RuleSet ParseRules(std::string_view text) {
  RuleSet rules;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    size_t sep = line.find_first_of("\t,");
    auto fail = [&](const std::string &why) {
      throw std::runtime_error("rules line " + std::to_string(line_no) +
                               ": " + why);
    };
    if (sep == std::string_view::npos) fail("expected two type ids");
    auto a = IdPath::FromRendered(Trim(line.substr(0, sep)));
    auto b = IdPath::FromRendered(Trim(line.substr(sep + 1)));
    if (!a || !b) fail("bad type id");
    try {
      rules.emplace(*a, *b);
    } catch (const std::invalid_argument &e) {
      fail(e.what());
    }
  }
  return rules;
}

RuleCollector::RuleCollector(std::string_view predicate)
    : predicate_(MustParse(predicate)) {}

void RuleCollector::Consume(const Triple &triple) {
  if (triple.predicate != predicate_) return;
  const NodeRef *object = triple.object_ref();
  if (triple.subject.is_path() && object != nullptr && object->is_path() &&
      triple.subject.path().is_type() && object->path().is_type() &&
      triple.subject.path() != object->path()) {
    rules_.emplace(triple.subject.path(), object->path());
  } else {
    ++skipped_;
  }
}

std::unique_ptr<TripleSink> RuleCollector::Fork() const {
  auto part = std::make_unique<RuleCollector>(*this);
  part->rules_.clear();
  part->skipped_ = 0;
  return part;
}

void RuleCollector::Absorb(TripleSink &part) {
  auto &other = static_cast<RuleCollector &>(part);
  rules_.merge(other.rules_);
  skipped_ += other.skipped_;
}

TypeAssertionCollector::TypeAssertionCollector(
    std::vector<std::string> is_a_predicates,
    std::optional<std::set<IdPath>> filter) {
  for (const auto &p : is_a_predicates) is_a_.push_back(MustParse(p));
  if (filter) {
    filter_ = std::make_shared<const std::set<IdPath>>(std::move(*filter));
  }
}

void TypeAssertionCollector::Consume(const Triple &triple) {
  const Mid *subject = triple.subject.if_mid();
  if (subject == nullptr) return;
  if (std::find(is_a_.begin(), is_a_.end(), triple.predicate) == is_a_.end()) {
    return;
  }
  const NodeRef *object = triple.object_ref();
  if (object == nullptr || !object->is_path() || !object->path().is_type()) {
    return;
  }
  if (filter_ && !filter_->contains(object->path())) return;
  assertions_[*subject].insert(object->path());
}

std::unique_ptr<TripleSink> TypeAssertionCollector::Fork() const {
  auto part = std::make_unique<TypeAssertionCollector>(*this);
  part->assertions_.clear();
  return part;
}

void TypeAssertionCollector::Absorb(TripleSink &part) {
  auto &other = static_cast<TypeAssertionCollector &>(part);
  for (auto &[mid, types] : other.assertions_) {
    assertions_[mid].merge(types);
  }
  other.assertions_.clear();
}

std::set<IdPath> RuleTypes(const RuleSet &rules) {
  std::set<IdPath> types;
  for (const auto &r : rules) {
    types.insert(r.first());
    types.insert(r.second());
  }
  return types;
}

std::vector<Violation> CheckIncompatibilities(const TypeAssertions &assertions,
                                              const RuleSet &rules) {
  // Partners of each type that sort after it, so every rule is visited once
  // per object, from its first type.
  std::map<IdPath, std::vector<const IncompatibilityRule *>> partners;
  for (const auto &r : rules) partners[r.first()].push_back(&r);

  std::vector<Violation> out;
  for (const auto &[mid, types] : assertions) {
    for (const auto &t : types) {
      auto it = partners.find(t);
      if (it == partners.end()) continue;
      for (const IncompatibilityRule *r : it->second) {
        if (types.contains(r->second())) out.push_back({mid, *r});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Violation> CheckIncompatibilities(
    const std::vector<std::pair<Mid, IdPath>> &assertions,
    const RuleSet &rules) {
  TypeAssertions grouped;
  for (const auto &[mid, type] : assertions) grouped[mid].insert(type);
  return CheckIncompatibilities(grouped, rules);
}

std::string WriteViolationTable(const std::vector<Violation> &violations) {
  std::string out = "object,type_a,type_b\n";
  for (const auto &v : violations) {
    out += JoinRow({v.object.Render(), v.rule.first().Render(),
                    v.rule.second().Render()},
                   ',');
    out += "\n";
  }
  return out;
}

}  // namespace fbont
