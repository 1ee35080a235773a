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

// Per-domain ontology reconstruction.
//
// The schema layer of a Freebase dump is itself a set of triples about
// IdPath subjects: declarations (/people/person is-a /type/type),
// descriptions (/common/topic/description) and property details such as
// /type/property/expected_type. A schema-bearing triple is attributed to
// the domain named by the first segment of its subject; the segment count
// decides whether the subject is a type (2) or a property (3).

#ifndef FBONT_SCHEMA_H_
#define FBONT_SCHEMA_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fbont/model.h"
#include "fbont/parser.h"

namespace fbont {

// Which predicates carry schema information. All entries are in rendered
// form ("/type/object/type" or a full external IRI).
struct SchemaConfig {
  SchemaConfig();

  std::vector<std::string> is_a_predicates;
  std::string type_marker;
  std::string property_marker;
  std::string description_predicate;
  std::vector<std::string> detail_predicates;
};

struct DomainSchema {
  std::string domain;
  std::set<IdPath> types;
  std::set<IdPath> properties;
  uint64_t description_count = 0;
  uint64_t property_detail_count = 0;

  // Properties whose parent type is not in types.
  std::vector<IdPath> Orphans() const;
  void Merge(const DomainSchema &other);

  bool operator==(const DomainSchema &) const = default;
};

using SchemaMap = std::map<std::string, DomainSchema>;

void MergeSchemas(SchemaMap *into, const SchemaMap &from);

struct PropertyDetail {
  IdPath property;
  std::string detail_kind;  // rendered predicate
  Object value;
};

struct SchemaLint {
  // Schema triples about a domain object itself (one-segment subject).
  uint64_t domain_object_facts = 0;
  // Schema triples about subjects with four or more segments.
  uint64_t nonstandard_subjects = 0;
  // Explicit declaration disagrees with the segment count.
  uint64_t declaration_mismatches = 0;

  void Merge(const SchemaLint &other);
  bool operator==(const SchemaLint &) const = default;
};

// Streams schema triples into a SchemaMap. Non-schema triples are ignored.
class SchemaExtractor : public TripleSink {
 public:
  explicit SchemaExtractor(const SchemaConfig &config = {});

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

  const SchemaMap &schemas() const { return schemas_; }
  const SchemaLint &lint() const { return lint_; }
  const std::vector<PropertyDetail> &details() const { return details_; }

  // Keep every PropertyDetail triple seen (off by default).
  void set_keep_details(bool keep) { keep_details_ = keep; }

 private:
  struct Predicates;
  std::shared_ptr<const Predicates> preds_;
  SchemaMap schemas_;
  SchemaLint lint_;
  bool keep_details_ = false;
  std::vector<PropertyDetail> details_;
};

// Convenience wrapper over SchemaExtractor for in-memory triples.
SchemaMap ExtractSchema(const std::vector<Triple> &triples,
                        const SchemaConfig &config = {});

enum class ScoreMode {
  kPooled,          // (descriptions + details) / (types + properties)
  kMeanOfAverages,  // mean of descriptions/items and details/items
};

class UndefinedScore : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Throws UndefinedScore when the domain has no types and no properties.
double ComplexityScore(const DomainSchema &schema,
                       ScoreMode mode = ScoreMode::kPooled);

// domain,n_types,n_properties,n_descriptions,n_details,complexity_score.
// Domains without types or properties get an empty score field.
std::string WriteSchemaTable(const SchemaMap &schemas,
                             ScoreMode mode = ScoreMode::kPooled);

// One row of a schema table as read back from disk.
struct SchemaRow {
  std::string domain;
  uint64_t n_types = 0;
  uint64_t n_properties = 0;
  uint64_t n_descriptions = 0;
  uint64_t n_details = 0;
  std::optional<double> complexity_score;

  bool operator==(const SchemaRow &) const = default;
};

std::vector<SchemaRow> ReadSchemaTable(std::string_view csv);

}  // namespace fbont

#endif  // FBONT_SCHEMA_H_
