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

// Fixture generators and naive text-level oracles shared by the tests.
// The oracles deliberately avoid the library: they work on raw dump lines
// with plain string operations.

#ifndef FBONT_TESTS_TEST_UTIL_H_
#define FBONT_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fbont::testing {

inline const std::string kNs = "http://rdf.freebase.com/ns/";
inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kOwl = "http://www.w3.org/2002/07/owl#";

// Dump IRI for a slash id: "/people/person" -> <ns/people.person>.
inline std::string Iri(const std::string &slash) {
  std::string dotted = slash.substr(1);
  std::replace(dotted.begin(), dotted.end(), '/', '.');
  return "<" + kNs + dotted + ">";
}

inline std::string Line(const std::string &s, const std::string &p,
                        const std::string &o) {
  return s + "\t" + p + "\t" + o + "\t.";
}

// Removes a directory tree on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("fbont_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::string operator/(const std::string &name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> SplitLines(const std::string &text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// ---------------------------------------------------------------------------
// Synthetic dumps.

struct DumpSpec {
  uint64_t seed = 1;
  size_t lines = 1000;
  size_t domains = 24;
  // Fraction of lines replaced by assorted malformed input.
  double malformed_rate = 0.0;
  // Fraction of well-formed lines that use an external vocabulary
  // predicate.
  double owl_rate = 0.1;
  // Use single spaces instead of tabs on some lines.
  bool mixed_separators = true;
};

inline std::string DomainName(size_t i) {
  static const char *kNames[] = {
      "people",   "film",    "music",    "book",      "location", "tv",
      "award",    "sports",  "biology",  "medicine",  "common",   "type",
      "freebase", "base",    "chess",    "zoos",      "rail",     "skiing",
      "comedy",   "physics", "geology",  "aviation",  "boats",    "wine",
      "law",      "games",   "religion", "education", "military", "food"};
  constexpr size_t kCount = sizeof(kNames) / sizeof(kNames[0]);
  if (i < kCount) return kNames[i];
  return "domain_" + std::to_string(i);
}

inline std::string RandomMid(std::mt19937_64 &rng) {
  static const char kChars[] = "0123456789abcdefghijklmnopqrstuvwxyz_";
  std::string s = "0";
  std::uniform_int_distribution<int> len(3, 7);
  std::uniform_int_distribution<int> pick(0, sizeof(kChars) - 2);
  for (int i = len(rng); i > 0; --i) s += kChars[pick(rng)];
  return "<" + kNs + "m." + s + ">";
}

inline std::string RandomLiteral(std::mt19937_64 &rng) {
  static const char *kTexts[] = {
      "1960", "Plato", "tab\\there", "quote \\\"x\\\"", "back\\\\slash",
      "caf\\u00E9", "line\\nbreak", "snow \xE2\x98\x83", "a b  c"};
  constexpr size_t kCount = sizeof(kTexts) / sizeof(kTexts[0]);
  std::uniform_int_distribution<size_t> pick(0, kCount - 1);
  std::string lit = "\"" + std::string(kTexts[pick(rng)]) + "\"";
  switch (rng() % 3) {
    case 0: return lit + "@en";
    case 1:
      return lit + "^^<http://www.w3.org/2001/XMLSchema#string>";
    default: return lit;
  }
}

inline std::string MalformedLine(std::mt19937_64 &rng) {
  static const char *kBad[] = {
      "not a triple",
      "<http://rdf.freebase.com/ns/m.01>\t<http://rdf.freebase.com/ns/"
      "people.person.name>\t\"unterminated\t.",
      "<http://rdf.freebase.com/ns/m.01>\t<http://rdf.freebase.com/ns/"
      "people.person.name>\t\"x\"",
      "\"lit\"\t<http://rdf.freebase.com/ns/people.person.name>\t\"x\"\t.",
      "_:b0\t<http://rdf.freebase.com/ns/people.person.name>\t\"x\"\t.",
      "<http://rdf.freebase.com/ns/m.01\t<http://rdf.freebase.com/ns/"
      "people.person.name>\t\"x\"\t.",
      "<a>\t<b>\t<c>\t<d>\t.",
      "",
      "# comment",
  };
  constexpr size_t kCount = sizeof(kBad) / sizeof(kBad[0]);
  return kBad[rng() % kCount];
}

// A dump with a known mix of Freebase-domain predicates, external
// vocabulary predicates and optional malformed lines.
inline std::string GenerateDump(const DumpSpec &spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<size_t> domain(0, spec.domains - 1);
  static const char *kOwlTerms[] = {
      "rdf:type", "rdfs:label", "rdfs:domain", "rdfs:range", "owl:inverseOf"};
  std::string out;
  for (size_t i = 0; i < spec.lines; ++i) {
    if (spec.malformed_rate > 0 && unit(rng) < spec.malformed_rate) {
      out += MalformedLine(rng) + "\n";
      continue;
    }
    std::string subject = RandomMid(rng);
    std::string predicate;
    if (unit(rng) < spec.owl_rate) {
      std::string term = kOwlTerms[rng() % 5];
      if (term.starts_with("rdf:")) {
        predicate = "<" + kRdf + term.substr(4) + ">";
      } else if (term.starts_with("rdfs:")) {
        predicate = "<" + kRdfs + term.substr(5) + ">";
      } else {
        predicate = "<" + kOwl + term.substr(4) + ">";
      }
    } else {
      std::string d = DomainName(domain(rng));
      predicate = Iri("/" + d + "/t" + std::to_string(rng() % 4) + "/p" +
                      std::to_string(rng() % 6));
    }
    std::string object = rng() % 2 ? RandomMid(rng) : RandomLiteral(rng);
    std::string sep = spec.mixed_separators && rng() % 5 == 0 ? " " : "\t";
    out += subject + sep + predicate + sep + object + sep + ".\n";
  }
  return out;
}

// Schema triples for one domain as dump text: `types` types, `props`
// properties under the first type, `descriptions` descriptions spread over
// them and `details` property details. Mirrors the library's scoring
// inputs, so the pooled complexity is (descriptions + details) /
// (types + props).
inline std::string SchemaDump(const std::string &d, int types, int props,
                              int descriptions, int details) {
  std::string out;
  std::vector<std::string> items, properties;
  for (int i = 0; i < types; ++i) {
    std::string t = "/" + d + "/t" + std::to_string(i);
    out += Line(Iri(t), Iri("/type/object/type"), Iri("/type/type")) + "\n";
    items.push_back(t);
  }
  for (int i = 0; i < props; ++i) {
    std::string p = "/" + d + "/t0/p" + std::to_string(i);
    out += Line(Iri(p), Iri("/type/object/type"), Iri("/type/property")) +
           "\n";
    items.push_back(p);
    properties.push_back(p);
  }
  for (int i = 0; i < descriptions; ++i) {
    out += Line(Iri(items[i % items.size()]),
                Iri("/common/topic/description"), "\"text\"@en") +
           "\n";
  }
  for (int i = 0; i < details; ++i) {
    std::string kind = i % 2 ? "/type/property/unique"
                             : "/type/property/expected_type";
    out += Line(Iri(properties[i % properties.size()]), Iri(kind),
                Iri("/common/topic")) +
           "\n";
  }
  return out;
}

// n instance facts in domain d, all with predicate /d/t0/p0.
inline std::string FactDump(const std::string &d, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) {
    out += Line(Iri("/m/0" + d + std::to_string(i)), Iri("/" + d + "/t0/p0"),
                "\"v" + std::to_string(i) + "\"") +
           "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Naive oracles over raw text.

// The second whitespace-separated token of a line that starts with '<',
// without angle brackets. Only valid on generated well-formed lines, whose
// subjects and predicates never contain whitespace.
inline std::string PredicateOf(const std::string &line) {
  size_t a = line.find_first_of(" \t");
  size_t b = line.find_first_of(" \t", a + 1);
  return line.substr(a + 2, b - a - 3);
}

// Slice name of a raw predicate IRI: the first dotted component under the
// namespace, or "#" + the text after the last '#'/'/' otherwise.
inline std::string OracleSlice(const std::string &predicate) {
  if (predicate.rfind(kNs, 0) == 0) {
    std::string rest = predicate.substr(kNs.size());
    return rest.substr(0, rest.find('.'));
  }
  return "#" + predicate.substr(predicate.find_last_of("#/") + 1);
}

// Lines a strict line filter considers triples: they start with '<' and
// end with '.' after a separator. Matches the generator's well-formed
// output and rejects every MalformedLine() variant except the ones that
// also need term-level checks, which the caller filters separately.
inline bool OracleLooksLikeTriple(const std::string &line) {
  if (line.empty() || line[0] != '<') return false;
  if (line.size() < 2 || line.back() != '.') return false;
  char before = line[line.size() - 2];
  if (before != '\t' && before != ' ') return false;
  // Bracket balance over the subject and predicate terms.
  size_t a = line.find_first_of(" \t");
  if (a == std::string::npos || line[a - 1] != '>') return false;
  size_t b = line.find_first_of(" \t", a + 1);
  if (b == std::string::npos || line[a + 1] != '<' || line[b - 1] != '>') {
    return false;
  }
  // Exactly one object term then the dot.
  std::string object = line.substr(b + 1, line.size() - 2 - (b + 1));
  if (object.empty()) return false;
  if (object[0] == '<') {
    return object.back() == '>' &&
           object.find_first_of(" \t") == std::string::npos;
  }
  if (object[0] != '"') return false;
  // Literal: closing quote not preceded by an odd run of backslashes.
  size_t i = 1;
  while (i < object.size()) {
    if (object[i] == '\\') {
      i += 2;
      continue;
    }
    if (object[i] == '"') break;
    ++i;
  }
  if (i >= object.size()) return false;
  std::string suffix = object.substr(i + 1);
  return suffix.empty() || suffix[0] == '@' || suffix.rfind("^^<", 0) == 0;
}

// Per-slice counts by direct predicate filtering.
inline std::map<std::string, uint64_t> OracleSliceCounts(
    const std::string &dump) {
  std::map<std::string, uint64_t> counts;
  for (const auto &line : SplitLines(dump)) {
    if (!OracleLooksLikeTriple(line)) continue;
    ++counts[OracleSlice(PredicateOf(line))];
  }
  return counts;
}

}  // namespace fbont::testing

#endif  // FBONT_TESTS_TEST_UTIL_H_
