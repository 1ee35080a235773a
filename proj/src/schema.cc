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

#include "fbont/schema.h"

#include <algorithm>
#include <charconv>

#include "fbont/table_io.h"

namespace fbont {

SchemaConfig::SchemaConfig()
    : is_a_predicates{"/type/object/type",
                      "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"},
      type_marker("/type/type"),
      property_marker("/type/property"),
      description_predicate("/common/topic/description"),
      detail_predicates{"/type/property/expected_type",
                        "/type/property/unique", "/type/property/schema",
                        "/type/type/domain"} {}

std::vector<IdPath> DomainSchema::Orphans() const {
  std::vector<IdPath> orphans;
  for (const auto &p : properties) {
    if (!types.contains(p.Prefix(2))) orphans.push_back(p);
  }
  return orphans;
}

void DomainSchema::Merge(const DomainSchema &other) {
  if (domain.empty()) domain = other.domain;
  types.insert(other.types.begin(), other.types.end());
  properties.insert(other.properties.begin(), other.properties.end());
  description_count += other.description_count;
  property_detail_count += other.property_detail_count;
}

void MergeSchemas(SchemaMap *into, const SchemaMap &from) {
  for (const auto &[domain, schema] : from) (*into)[domain].Merge(schema);
}

void SchemaLint::Merge(const SchemaLint &other) {
  domain_object_facts += other.domain_object_facts;
  nonstandard_subjects += other.nonstandard_subjects;
  declaration_mismatches += other.declaration_mismatches;
}

// ---------------------------------------------------------------------------

struct SchemaExtractor::Predicates {
  std::vector<NodeRef> is_a;
  NodeRef type_marker;
  NodeRef property_marker;
  NodeRef description;
  std::vector<NodeRef> details;
};

namespace {

NodeRef ParseConfigRef(const std::string &rendered) {
  auto ref = NodeRef::Parse(rendered);
  if (!ref) throw std::invalid_argument("bad schema predicate: " + rendered);
  return *ref;
}

bool Contains(const std::vector<NodeRef> &refs, const NodeRef &ref) {
  return std::find(refs.begin(), refs.end(), ref) != refs.end();
}

}  // namespace

SchemaExtractor::SchemaExtractor(const SchemaConfig &config) {
  auto preds = std::make_shared<Predicates>();
  for (const auto &p : config.is_a_predicates) {
    preds->is_a.push_back(ParseConfigRef(p));
  }
  preds->type_marker = ParseConfigRef(config.type_marker);
  preds->property_marker = ParseConfigRef(config.property_marker);
  preds->description = ParseConfigRef(config.description_predicate);
  for (const auto &p : config.detail_predicates) {
    preds->details.push_back(ParseConfigRef(p));
  }
  preds_ = std::move(preds);
}

void SchemaExtractor::Consume(const Triple &triple) {
  const IdPath *subject = triple.subject.if_path();
  if (subject == nullptr) return;

  enum { kDeclaration, kDescription, kDetail } fact;
  bool declares_type = false;
  const NodeRef &pred = triple.predicate;
  if (pred == preds_->description) {
    fact = kDescription;
  } else if (Contains(preds_->details, pred)) {
    fact = kDetail;
  } else if (Contains(preds_->is_a, pred)) {
    const NodeRef *marker = triple.object_ref();
    if (marker == nullptr) return;
    if (*marker == preds_->type_marker) {
      declares_type = true;
    } else if (*marker != preds_->property_marker) {
      return;
    }
    fact = kDeclaration;
  } else {
    return;
  }

  size_t segments = subject->segment_count();
  if (segments == 1) {
    ++lint_.domain_object_facts;
    return;
  }
  if (segments > 3) {
    ++lint_.nonstandard_subjects;
    return;
  }

  std::string domain(subject->domain());
  DomainSchema &schema = schemas_[domain];
  if (schema.domain.empty()) schema.domain = domain;
  bool is_type = segments == 2;
  if (is_type) {
    schema.types.insert(*subject);
  } else {
    schema.properties.insert(*subject);
  }

  switch (fact) {
    case kDeclaration:
      if (declares_type != is_type) ++lint_.declaration_mismatches;
      break;
    case kDescription:
      ++schema.description_count;
      break;
    case kDetail:
      ++schema.property_detail_count;
      if (keep_details_) {
        details_.push_back({*subject, pred.Render(), triple.object});
      }
      break;
  }
}

std::unique_ptr<TripleSink> SchemaExtractor::Fork() const {
  auto part = std::make_unique<SchemaExtractor>(*this);
  part->schemas_.clear();
  part->lint_ = {};
  part->details_.clear();
  return part;
}

void SchemaExtractor::Absorb(TripleSink &part) {
  auto &other = static_cast<SchemaExtractor &>(part);
  MergeSchemas(&schemas_, other.schemas_);
  lint_.Merge(other.lint_);
  details_.insert(details_.end(),
                  std::make_move_iterator(other.details_.begin()),
                  std::make_move_iterator(other.details_.end()));
  other.details_.clear();
}

SchemaMap ExtractSchema(const std::vector<Triple> &triples,
                        const SchemaConfig &config) {
  SchemaExtractor extractor(config);
  for (const auto &t : triples) extractor.Consume(t);
  return extractor.schemas();
}

double ComplexityScore(const DomainSchema &schema, ScoreMode mode) {
  size_t items = schema.types.size() + schema.properties.size();
  if (items == 0) {
    throw UndefinedScore("domain '" + schema.domain +
                         "' has no types or properties");
  }
  double n = static_cast<double>(items);
  double descriptions = static_cast<double>(schema.description_count);
  double details = static_cast<double>(schema.property_detail_count);
  if (mode == ScoreMode::kMeanOfAverages) {
    return (descriptions / n + details / n) / 2.0;
  }
  return (descriptions + details) / n;
}

namespace {

const Row kSchemaColumns = {"domain",         "n_types",   "n_properties",
                            "n_descriptions", "n_details", "complexity_score"};

uint64_t ParseCount(const std::string &field) {
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("bad count '" + field + "' in schema table");
  }
  return value;
}

}  // namespace

std::string WriteSchemaTable(const SchemaMap &schemas, ScoreMode mode) {
  std::string out = JoinRow(kSchemaColumns, ',') + "\n";
  for (const auto &[domain, schema] : schemas) {
    std::string score;
    if (!schema.types.empty() || !schema.properties.empty()) {
      score = FormatDouble(ComplexityScore(schema, mode));
    }
    out += JoinRow({domain, std::to_string(schema.types.size()),
                    std::to_string(schema.properties.size()),
                    std::to_string(schema.description_count),
                    std::to_string(schema.property_detail_count), score},
                   ',');
    out += "\n";
  }
  return out;
}

std::vector<SchemaRow> ReadSchemaTable(std::string_view csv) {
  std::vector<SchemaRow> rows;
  auto table = ParseDelimited(csv, ',');
  if (table.empty()) return rows;
  if (table[0] != kSchemaColumns) {
    throw std::runtime_error("unexpected schema table header");
  }
  for (size_t i = 1; i < table.size(); ++i) {
    const Row &r = table[i];
    if (r.size() != kSchemaColumns.size()) {
      throw std::runtime_error("schema table row " + std::to_string(i) +
                               " has wrong field count");
    }
    SchemaRow row;
    row.domain = r[0];
    row.n_types = ParseCount(r[1]);
    row.n_properties = ParseCount(r[2]);
    row.n_descriptions = ParseCount(r[3]);
    row.n_details = ParseCount(r[4]);
    if (!r[5].empty()) {
      double score = 0;
      auto [ptr, ec] = std::from_chars(r[5].data(), r[5].data() + r[5].size(),
                                       score);
      if (ec != std::errc() || ptr != r[5].data() + r[5].size()) {
        throw std::runtime_error("bad score '" + r[5] + "'");
      }
      row.complexity_score = score;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fbont
