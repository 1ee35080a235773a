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

#include "fbont/model.h"

#include <stdexcept>

#include "fbont/ntriples.h"

namespace fbont {

namespace {

bool ValidSegment(std::string_view s) {
  return !s.empty() && s.find('/') == std::string_view::npos &&
         s.find('.') == std::string_view::npos;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

bool IsIdChars(std::string_view s) {
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '_';
    if (!ok) return false;
  }
  return true;
}

Mid::Mid(std::string suffix) : suffix_(std::move(suffix)) {
  if (!ValidSegment(suffix_)) {
    throw std::invalid_argument("invalid mid suffix: '" + suffix_ + "'");
  }
}

IdPath::IdPath(const std::vector<std::string> &segments) {
  if (segments.empty()) throw std::invalid_argument("empty id path");
  for (const auto &s : segments) {
    if (!ValidSegment(s)) {
      throw std::invalid_argument("invalid id path segment: '" + s + "'");
    }
    path_ += '/';
    path_ += s;
  }
  count_ = segments.size();
}

std::optional<IdPath> IdPath::FromRendered(std::string_view rendered) {
  if (rendered.size() < 2 || rendered[0] != '/') return std::nullopt;
  std::vector<std::string> segments;
  for (auto part : Split(rendered.substr(1), '/')) {
    if (!ValidSegment(part)) return std::nullopt;
    segments.emplace_back(part);
  }
  return IdPath(segments);
}

std::string_view IdPath::segment(size_t i) const {
  if (i >= count_) throw std::out_of_range("id path segment index");
  std::string_view rest(path_);
  size_t pos = 0;
  for (size_t k = 0; k <= i; ++k) {
    rest = rest.substr(pos + 1);
    pos = rest.find('/');
  }
  return rest.substr(0, pos);
}

std::vector<std::string> IdPath::segments() const {
  std::vector<std::string> out;
  for (auto part : Split(std::string_view(path_).substr(1), '/')) {
    out.emplace_back(part);
  }
  return out;
}

bool IdPath::is_canonical() const {
  for (char c : path_) {
    if (c != '/' && !IsIdChars(std::string_view(&c, 1))) return false;
  }
  return true;
}

IdPath IdPath::Prefix(size_t n) const {
  if (n == 0 || n > count_) throw std::out_of_range("id path prefix length");
  IdPath out;
  size_t end = 0;
  for (size_t k = 0; k < n; ++k) {
    end = path_.find('/', end + 1);
    if (end == std::string::npos) end = path_.size();
  }
  out.path_ = path_.substr(0, end);
  out.count_ = n;
  return out;
}

std::string_view ExternalIri::LocalName() const {
  std::string_view iri(iri_);
  size_t pos = iri.find_last_of("#/");
  if (pos == std::string_view::npos) return iri;
  return iri.substr(pos + 1);
}

bool ExternalIri::has_scheme() const {
  return iri_.starts_with("http://") || iri_.starts_with("https://");
}

std::string NodeRef::Render() const {
  switch (kind()) {
    case Kind::kMid:
      return mid().Render();
    case Kind::kIdPath:
      return path().Render();
    case Kind::kExternal:
      return external().iri();
  }
  return {};
}

std::optional<NodeRef> NodeRef::Parse(std::string_view rendered) {
  if (rendered.empty()) return std::nullopt;
  if (rendered[0] != '/') return NodeRef(ExternalIri(std::string(rendered)));
  auto path = IdPath::FromRendered(rendered);
  if (!path) return std::nullopt;
  if (path->segment_count() == 2 && path->domain() == "m") {
    return NodeRef(Mid(std::string(path->segment(1))));
  }
  return NodeRef(std::move(*path));
}

bool NodeRef::is_canonical() const {
  switch (kind()) {
    case Kind::kMid:
      return mid().is_canonical();
    case Kind::kIdPath:
      return path().is_canonical();
    case Kind::kExternal:
      return true;
  }
  return true;
}

NodeRef NormalizeIri(std::string_view iri, const Namespace &ns) {
  auto external = [&] { return NodeRef(ExternalIri(std::string(iri))); };
  if (ns.prefix.empty() || !iri.starts_with(ns.prefix)) return external();
  std::string_view local = iri.substr(ns.prefix.size());
  if (local.empty()) return external();

  if (local.starts_with("m.")) {
    std::string_view suffix = local.substr(2);
    if (ValidSegment(suffix) && (!ns.strict_ids || IsIdChars(suffix))) {
      return NodeRef(Mid(std::string(suffix)));
    }
  }

  std::vector<std::string> segments;
  for (auto part : Split(local, '.')) {
    if (!ValidSegment(part)) return external();
    if (ns.strict_ids && !IsIdChars(part)) return external();
    segments.emplace_back(part);
  }
  // "m.<x>" is always a Mid; an unparseable suffix must not masquerade as
  // a two-segment path that renders identically.
  if (segments.size() == 2 && segments[0] == "m") return external();
  return NodeRef(IdPath(segments));
}

std::string DenormalizeIri(const NodeRef &ref, const Namespace &ns) {
  switch (ref.kind()) {
    case NodeRef::Kind::kMid:
      return ns.prefix + "m." + ref.mid().suffix();
    case NodeRef::Kind::kIdPath: {
      std::string out = ns.prefix;
      const std::string &path = ref.path().Render();
      for (size_t i = 1; i < path.size(); ++i) {
        out += path[i] == '/' ? '.' : path[i];
      }
      return out;
    }
    case NodeRef::Kind::kExternal:
      return ref.external().iri();
  }
  return {};
}

std::string Render(const Object &object) {
  if (const auto *ref = std::get_if<NodeRef>(&object)) return ref->Render();
  return FormatLiteral(std::get<Literal>(object));
}

}  // namespace fbont
