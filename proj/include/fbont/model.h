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

// Identifier and triple data model.
//
// Freebase dumps spell identifiers as dotted IRIs under a namespace prefix
// (http://rdf.freebase.com/ns/people.person). Everything in this toolkit
// works on the slash notation instead (/people/person), so IRIs are
// normalized once at parse time into one of three identifier kinds:
//
//   Mid          /m/0abc12          machine id of an object
//   IdPath       /people/person     domain (1), type (2) or property (3)
//   ExternalIri  http://...#label   anything outside the namespace
//
// All types here are immutable values.

#ifndef FBONT_MODEL_H_
#define FBONT_MODEL_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fbont {

inline constexpr std::string_view kDefaultNamespacePrefix =
    "http://rdf.freebase.com/ns/";

// True if every byte of s is in [0-9a-z_].
bool IsIdChars(std::string_view s);

// Machine id. Rendered as "/m/" + suffix.
class Mid {
 public:
  Mid() = default;
  // Suffix must be non-empty and must not contain '/' or '.'. Characters
  // outside [0-9a-z_] are tolerated; see is_canonical().
  explicit Mid(std::string suffix);

  const std::string &suffix() const { return suffix_; }
  std::string Render() const { return "/m/" + suffix_; }
  bool is_canonical() const { return IsIdChars(suffix_); }

  auto operator<=>(const Mid &) const = default;
  bool operator==(const Mid &) const = default;

 private:
  std::string suffix_;
};

// Slash path of one or more non-empty segments.
class IdPath {
 public:
  IdPath() = default;
  explicit IdPath(const std::vector<std::string> &segments);

  // Parses "/a/b/c". Returns nullopt on empty segments or a missing leading
  // slash.
  static std::optional<IdPath> FromRendered(std::string_view rendered);

  const std::string &Render() const { return path_; }
  size_t segment_count() const { return count_; }
  std::string_view segment(size_t i) const;
  std::string_view domain() const { return segment(0); }
  std::vector<std::string> segments() const;

  bool is_domain() const { return count_ == 1; }
  bool is_type() const { return count_ == 2; }
  bool is_property() const { return count_ == 3; }
  bool is_nonstandard() const { return count_ >= 4; }
  bool is_canonical() const;

  // The first n segments, n in [1, segment_count()].
  IdPath Prefix(size_t n) const;

  auto operator<=>(const IdPath &other) const { return path_ <=> other.path_; }
  bool operator==(const IdPath &other) const { return path_ == other.path_; }

 private:
  std::string path_;  // canonical "/a/b/c" rendering
  size_t count_ = 0;
};

// An IRI outside the configured namespace, kept verbatim.
class ExternalIri {
 public:
  ExternalIri() = default;
  explicit ExternalIri(std::string iri) : iri_(std::move(iri)) {}

  const std::string &iri() const { return iri_; }
  // Text after the last '#' or '/'.
  std::string_view LocalName() const;
  bool has_scheme() const;

  auto operator<=>(const ExternalIri &) const = default;
  bool operator==(const ExternalIri &) const = default;

 private:
  std::string iri_;
};

class NodeRef {
 public:
  enum class Kind { kMid, kIdPath, kExternal };

  NodeRef() : value_(ExternalIri()) {}
  NodeRef(Mid mid) : value_(std::move(mid)) {}
  NodeRef(IdPath path) : value_(std::move(path)) {}
  NodeRef(ExternalIri iri) : value_(std::move(iri)) {}

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_mid() const { return kind() == Kind::kMid; }
  bool is_path() const { return kind() == Kind::kIdPath; }
  bool is_external() const { return kind() == Kind::kExternal; }

  const Mid &mid() const { return std::get<Mid>(value_); }
  const IdPath &path() const { return std::get<IdPath>(value_); }
  const ExternalIri &external() const { return std::get<ExternalIri>(value_); }

  const Mid *if_mid() const { return std::get_if<Mid>(&value_); }
  const IdPath *if_path() const { return std::get_if<IdPath>(&value_); }

  // Slash notation for Mid and IdPath, the verbatim IRI otherwise.
  std::string Render() const;
  // Inverse of Render(). Strings starting with "/m/" and exactly one more
  // segment are Mids, other slash strings are IdPaths, anything else is an
  // ExternalIri.
  static std::optional<NodeRef> Parse(std::string_view rendered);

  // False when a Freebase id carries characters outside [0-9a-z_].
  bool is_canonical() const;

  auto operator<=>(const NodeRef &) const = default;
  bool operator==(const NodeRef &) const = default;

 private:
  std::variant<Mid, IdPath, ExternalIri> value_;
};

struct Literal {
  std::string lexical;
  std::optional<std::string> language;
  std::optional<ExternalIri> datatype;

  auto operator<=>(const Literal &) const = default;
  bool operator==(const Literal &) const = default;
};

using Object = std::variant<NodeRef, Literal>;

struct Triple {
  NodeRef subject;
  NodeRef predicate;
  Object object;

  const NodeRef *object_ref() const { return std::get_if<NodeRef>(&object); }
  const Literal *object_literal() const {
    return std::get_if<Literal>(&object);
  }

  auto operator<=>(const Triple &) const = default;
  bool operator==(const Triple &) const = default;
};

// How dump IRIs map onto the slash notation.
struct Namespace {
  std::string prefix{kDefaultNamespacePrefix};
  // Reject ids outside [0-9a-z_] (they fall back to ExternalIri) instead of
  // accepting them as non-canonical.
  bool strict_ids = false;
};

// Maps a dump IRI (without angle brackets) to a NodeRef. Total: anything
// that does not fit the namespace becomes an ExternalIri.
NodeRef NormalizeIri(std::string_view iri, const Namespace &ns = {});

// Inverse of NormalizeIri: the dump IRI for a NodeRef.
std::string DenormalizeIri(const NodeRef &ref, const Namespace &ns = {});

inline std::string Render(const NodeRef &ref) { return ref.Render(); }
std::string Render(const Object &object);

}  // namespace fbont

template <>
struct std::hash<fbont::Mid> {
  size_t operator()(const fbont::Mid &m) const noexcept {
    return std::hash<std::string>()(m.suffix());
  }
};

template <>
struct std::hash<fbont::IdPath> {
  size_t operator()(const fbont::IdPath &p) const noexcept {
    return std::hash<std::string>()(p.Render());
  }
};

#endif  // FBONT_MODEL_H_
