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


#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fbont/model.h"
#include "fbont/ntriples.h"

namespace fbont {
namespace {

const std::string kNs(kDefaultNamespacePrefix);

TEST_CASE("normalize freebase iris") {
  NodeRef mid = NormalizeIri(kNs + "m.abc123");
  REQUIRE(mid.is_mid());
  CHECK(mid.Render() == "/m/abc123");

  NodeRef prop = NormalizeIri(kNs + "people.person.date_of_birth");
  REQUIRE(prop.is_path());
  CHECK(prop.Render() == "/people/person/date_of_birth");
  CHECK(prop.path().is_property());
  CHECK(prop.path().domain() == "people");

  std::string label = "http://www.w3.org/2000/01/rdf-schema#label";
  NodeRef ext = NormalizeIri(label);
  REQUIRE(ext.is_external());
  CHECK(ext.Render() == label);
  CHECK(ext.external().LocalName() == "label");
  CHECK(ext.external().has_scheme());
}

TEST_CASE("render slash notation") {
  CHECK(Mid("abc123").Render() == "/m/abc123");
  CHECK(IdPath({"people", "person"}).Render() == "/people/person");
  CHECK(IdPath({"people"}).Render() == "/people");
  CHECK(IdPath({"people"}).is_domain());
  CHECK(IdPath({"people", "person"}).is_type());
  CHECK(IdPath({"a", "b", "c", "d"}).is_nonstandard());
}

TEST_CASE("degenerate identifiers") {
  CHECK_THROWS_AS(Mid(""), std::invalid_argument);
  CHECK_THROWS_AS(Mid("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Mid("a.b"), std::invalid_argument);
  CHECK_FALSE(IdPath::FromRendered("people"));
  CHECK_FALSE(IdPath::FromRendered("/people//person"));
  CHECK_FALSE(IdPath::FromRendered("/"));
  CHECK(NormalizeIri(kNs).is_external());
  CHECK(NormalizeIri(kNs + "people..person").is_external());
  // An unparseable mid suffix must not turn into the path /m/x.
  CHECK(NormalizeIri("http://example.org/m.x").is_external());
}

TEST_CASE("alternate namespace prefix") {
  Namespace ns{"http://mirror.example/fb/", false};
  NodeRef ref = NormalizeIri("http://mirror.example/fb/film.film", ns);
  REQUIRE(ref.is_path());
  CHECK(ref.Render() == "/film/film");
  CHECK(NormalizeIri(kNs + "film.film", ns).is_external());
  CHECK(DenormalizeIri(ref, ns) == "http://mirror.example/fb/film.film");
}

TEST_CASE("non-canonical ids: lint by default, rejected when strict") {
  NodeRef lax = NormalizeIri(kNs + "base.Foo_Bar");
  REQUIRE(lax.is_path());
  CHECK_FALSE(lax.is_canonical());

  Namespace strict{kNs, true};
  CHECK(NormalizeIri(kNs + "base.Foo_Bar", strict).is_external());
  CHECK(NormalizeIri(kNs + "m.0ABC", strict).is_external());
  CHECK(NormalizeIri(kNs + "m.0abc", strict).is_mid());
}

TEST_CASE("literal and triple values") {
  Literal a{"1960", std::nullopt, std::nullopt};
  Literal b{"1960", std::string("en"), std::nullopt};
  CHECK(a != b);
  CHECK(FormatLiteral(a) == "\"1960\"");
  CHECK(FormatLiteral(b) == "\"1960\"@en");
  Literal typed{"5", std::nullopt,
                ExternalIri("http://www.w3.org/2001/XMLSchema#int")};
  CHECK(FormatLiteral(typed) ==
        "\"5\"^^<http://www.w3.org/2001/XMLSchema#int>");

  Triple t{Mid("abc123"), IdPath({"people", "person", "date_of_birth"}), a};
  CHECK(t.object_literal() != nullptr);
  CHECK(t.object_ref() == nullptr);
  CHECK(Render(t.object) == "\"1960\"");
}

// Random ids drawn from the canonical alphabet, occasionally with
// upper-case letters.
std::string RandomSegment(std::mt19937_64 &rng, bool allow_upper) {
  static const char kLower[] = "abcdefghijklmnopqrstuvwxyz0123456789_";
  static const char kUpper[] = "ABCXYZ";
  std::string s;
  int len = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < len; ++i) {
    if (allow_upper && rng() % 10 == 0) {
      s += kUpper[rng() % 6];
    } else {
      s += kLower[rng() % (sizeof(kLower) - 1)];
    }
  }
  return s;
}

TEST_CASE("property: normalize, render and parse round-trip") {
  std::mt19937_64 rng(7);
  Namespace strict{kNs, true};
  for (int iter = 0; iter < 5000; ++iter) {
    bool upper = iter % 2 == 1;
    std::string local;
    if (rng() % 3 == 0) {
      local = "m." + RandomSegment(rng, upper);
    } else {
      size_t n = 1 + rng() % 4;
      for (size_t i = 0; i < n; ++i) {
        if (i) local += '.';
        std::string seg = RandomSegment(rng, upper);
        // Keep "m" out of the leading segment of two-segment paths.
        if (i == 0 && seg == "m") seg = "mm";
        local += seg;
      }
    }
    std::string iri = kNs + local;

    NodeRef ref = NormalizeIri(iri);
    // Exactly one variant; external only for nothing in this generator.
    CHECK_FALSE(ref.is_external());
    CHECK(DenormalizeIri(ref) == iri);

    auto parsed = NodeRef::Parse(ref.Render());
    REQUIRE(parsed);
    CHECK(*parsed == ref);
    if (ref.is_path()) {
      CHECK(parsed->path().segment_count() == ref.path().segment_count());
    }

    NodeRef s = NormalizeIri(iri, strict);
    if (!s.is_external()) {
      for (char c : s.Render()) {
        bool ok = c == '/' || c == '_' || (c >= '0' && c <= '9') ||
                  (c >= 'a' && c <= 'z');
        CHECK(ok);
      }
    } else {
      CHECK(upper);
    }
  }
}

TEST_CASE("escapes and utf-8") {
  CHECK(EscapeLiteral("a\"b\\c\n\t") == "a\\\"b\\\\c\\n\\t");
  size_t unknown = 0;
  CHECK(UnescapeLiteral("caf\\u00E9", &unknown) == "caf\xC3\xA9");
  CHECK(UnescapeLiteral("\\U0001F600") == "\xF0\x9F\x98\x80");
  CHECK(UnescapeLiteral("a\\qb", &unknown) == "a\\qb");
  CHECK(unknown == 1);

  std::string bad = "ok\xFF\xFEok";
  CHECK_FALSE(IsValidUtf8(bad));
  CHECK(SanitizeUtf8(&bad) == 2);
  CHECK(bad == "ok\xEF\xBF\xBD\xEF\xBF\xBDok");
  CHECK(IsValidUtf8(bad));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    for (int n = rng() % 12; n > 0; --n) {
      text += static_cast<char>(" \"\\\n\r\tazAZ09"[rng() % 14]);
    }
    CHECK(UnescapeLiteral(EscapeLiteral(text)) == text);
  }
}

}  // namespace
}  // namespace fbont
