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


#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>

#include "doctest.h"
#include "fbont/cli.h"
#include "fbont/slicer.h"
#include "test_util.h"

namespace fbont {
namespace {

namespace fs = std::filesystem;
using testing::Iri;
using testing::Line;
using testing::ReadText;
using testing::TempDir;
using testing::WriteText;

struct Run {
  int code;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, err.str()};
}

// Every regular file under dir, relative path -> contents.
std::map<std::string, std::string> Snapshot(const fs::path &dir) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), dir).string()] = ReadText(e.path().string());
    }
  }
  return files;
}

TEST_CASE("slice writes the taxonomy and reports") {
  TempDir dir;
  std::string dump = testing::GenerateDump(
      {.seed = 6, .lines = 3000, .malformed_rate = 0.02});
  WriteText(dir / "dump.nt", dump);
  Run r = Cli({"slice", dir / "dump.nt", "-o", dir / "out", "--format", "md",
               "--format", "csv", "--dedup"});
  REQUIRE(r.code == kExitOk);
  for (const char *name : {"taxonomy.md", "taxonomy.csv", "slices.tsv",
                           "slices.json", "parse_report.json"}) {
    CHECK(fs::exists(dir / ("out/" + std::string(name))));
  }
  CHECK_FALSE(fs::exists(dir / "out/taxonomy.tsv"));

  // Per-slice counts agree with the text oracle.
  SliceCounts counts = ReadSliceTable(ReadText(dir / "out/slices.tsv"),
                                      TableFormat::kTsv);
  auto oracle = testing::OracleSliceCounts(dump);
  std::map<std::string, uint64_t> got;
  for (const auto &[key, n] : counts) {
    got[key.kind == SliceKey::Kind::kOwlTerm ? "#" + key.name : key.name] = n;
  }
  CHECK(got == oracle);

  auto report = nlohmann::json::parse(ReadText(dir / "out/parse_report.json"));
  uint64_t ok = report["parse"]["triples_ok"];
  CHECK(ok == report["sliced"].get<uint64_t>() +
                  report["unclassified"].get<uint64_t>());
  CHECK(report["parse"]["lines_malformed"].get<uint64_t>() > 0);
  CHECK(report.contains("distinct_triples"));
}

TEST_CASE("slice edge cases") {
  TempDir dir;
  Run empty = Cli({"slice", "/dev/null", "-o", dir.path().string()});
  CHECK(empty.code == kExitOk);
  CHECK(testing::SplitLines(ReadText(dir / "taxonomy.md")).size() == 2);

  Run missing = Cli({"slice", dir / "nope.nt", "-o", dir.path().string()});
  CHECK(missing.code == kExitIo);
  CHECK(missing.err.find("nope.nt") != std::string::npos);

  CHECK(Cli({"slice"}).code == kExitUsage);
  CHECK(Cli({"slice", "/dev/null", "--format", "json"}).code == kExitUsage);
  CHECK(Cli({"slice", "/dev/null", "--counts-only", "--materialize",
             dir / "m"})
            .code == kExitUsage);
  CHECK(Cli({"frobnicate"}).code == kExitUsage);
  CHECK(Cli({}).code == kExitUsage);
  CHECK(Cli({"--help"}).code == kExitOk);
}

TEST_CASE("slice materializes a partition") {
  TempDir dir;
  std::string dump = testing::FactDump("people", 5) +
                     testing::FactDump("film", 3) +
                     Line(Iri("/m/01"), "<" + testing::kRdfs + "label>",
                          "\"x\"") +
                     "\n";
  WriteText(dir / "dump.nt", dump);
  for (std::string layout : {"nested", "flat"}) {
    fs::path m = dir.path() / ("m_" + layout);
    REQUIRE(Cli({"slice", dir / "dump.nt", "-o", dir / "out", "--materialize",
                 m.string(), "--layout", layout})
                .code == kExitOk);
    SliceLayout l = layout == "flat" ? SliceLayout::kFlat : SliceLayout::kNested;
    std::string people =
        ReadText((m / SliceFilePath(SliceKey::Domain("people"), l)).string());
    CHECK(testing::SplitLines(people).size() == 5);
    std::string film =
        ReadText((m / SliceFilePath(SliceKey::Domain("film"), l)).string());
    CHECK(testing::SplitLines(film).size() == 3);
    size_t lines = 0;
    for (const auto &[name, text] : Snapshot(m)) {
      lines += testing::SplitLines(text).size();
    }
    CHECK(lines == 9);
  }
}

TEST_CASE("schema command") {
  TempDir dir;
  WriteText(dir / "schema.nt", testing::SchemaDump("people", 2, 3, 4, 6));
  REQUIRE(Cli({"schema", dir / "schema.nt", "-o", dir.path().string()}).code ==
          kExitOk);
  auto lines = testing::SplitLines(ReadText(dir / "schema.csv"));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "people,2,3,4,6,2.0");
  CHECK(fs::exists(dir / "schema_report.json"));

  REQUIRE(Cli({"schema", dir / "schema.nt", "-o", dir.path().string(),
               "--score", "mean"})
              .code == kExitOk);
  CHECK(testing::SplitLines(ReadText(dir / "schema.csv"))[1] ==
        "people,2,3,4,6,1.0");
  CHECK(Cli({"schema", "/dev/null", "--score", "median"}).code == kExitUsage);

  REQUIRE(Cli({"schema", "/dev/null", "-o", dir.path().string()}).code ==
          kExitOk);
  CHECK(testing::SplitLines(ReadText(dir / "schema.csv")).size() == 1);
}

std::string SemanticsDump() {
  std::string t = "/type/object/type";
  return Line(Iri("/m/0xyz"), Iri("/dataworld/gardening_hint/replaced_by"),
              Iri("/m/0abc")) +
         "\n" +
         Line(Iri("/people/person/date_of_birth"),
              Iri("/freebase/valuenotation/has_value"), Iri("/m/0plato")) +
         "\n" + Line(Iri("/m/0term"), Iri(t), Iri("/film/film")) + "\n" +
         Line(Iri("/m/0xyz"), Iri(t), Iri("/film/film_series")) + "\n" +
         Line(Iri("/m/0abc"), Iri(t), Iri("/film/film")) + "\n";
}

TEST_CASE("semantics command") {
  TempDir dir;
  WriteText(dir / "dump.nt", SemanticsDump());
  WriteText(dir / "rules.txt", "/film/film,/film/film_series\n");
  REQUIRE(Cli({"semantics", dir / "dump.nt", "-o", dir.path().string(),
               "--rules", dir / "rules.txt"})
              .code == kExitOk);
  CHECK(ReadText(dir / "merges.tsv") ==
        "duplicate_mid\tcanonical_mid\n/m/0xyz\t/m/0abc\n");
  CHECK(ReadText(dir / "valuenotes.csv") ==
        "property,object,kind,orientation\n"
        "/people/person/date_of_birth,/m/0plato,HasValue,property_subject\n");
  // The film_series assertion on the duplicate lands on its canonical id.
  CHECK(ReadText(dir / "violations.csv") ==
        "object,type_a,type_b\n/m/0abc,/film/film,/film/film_series\n");
  auto report =
      nlohmann::json::parse(ReadText(dir / "semantics_report.json"));
  CHECK(report.is_object());

  // Without rules the violation table is empty.
  REQUIRE(Cli({"semantics", dir / "dump.nt", "-o", dir / "norules"}).code ==
          kExitOk);
  CHECK(testing::SplitLines(ReadText(dir / "norules/violations.csv")).size() ==
        1);
  CHECK(Cli({"semantics", dir / "dump.nt", "-o", dir / "x", "--rules",
             dir / "missing.txt"})
            .code == kExitIo);
}

TEST_CASE("semantics merge cycle") {
  TempDir dir;
  std::string hint = Iri("/dataworld/gardening_hint/replaced_by");
  WriteText(dir / "dump.nt",
            Line(Iri("/m/0a"), hint, Iri("/m/0b")) + "\n" +
                Line(Iri("/m/0b"), hint, Iri("/m/0c")) + "\n" +
                Line(Iri("/m/0c"), hint, Iri("/m/0a")) + "\n");
  Run fail = Cli({"semantics", dir / "dump.nt", "-o", dir / "fail"});
  CHECK(fail.code == kExitIntegrity);
  CHECK(fail.err.find("/m/0a") != std::string::npos);
  REQUIRE(Cli({"semantics", dir / "dump.nt", "-o", dir / "ok",
               "--cycle-policy", "smallest"})
              .code == kExitOk);
  CHECK(ReadText(dir / "ok/merges.tsv") ==
        "duplicate_mid\tcanonical_mid\n/m/0b\t/m/0a\n/m/0c\t/m/0a\n");
}

struct StudyDomain {
  std::string name;
  int types, props, descriptions, details, facts;
};

const std::vector<StudyDomain> kStudy = {{"alpha", 2, 2, 4, 4, 20},
                                         {"beta", 1, 3, 8, 4, 35},
                                         {"gamma", 2, 3, 5, 5, 15},
                                         {"delta", 1, 1, 1, 1, 10},
                                         {"music", 1, 1, 0, 0, 400}};

std::string StudyDump() {
  std::string dump;
  for (const auto &d : kStudy) {
    dump += testing::SchemaDump(d.name, d.types, d.props, d.descriptions,
                                d.details);
    dump += testing::FactDump(d.name, d.facts);
  }
  return dump;
}

double OracleR(bool without_music) {
  std::vector<long double> xs, ys;
  for (const auto &d : kStudy) {
    if (without_music && d.name == "music") continue;
    xs.push_back((long double)(d.descriptions + d.details) /
                 (d.types + d.props));
    ys.push_back(d.facts);
  }
  long double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / xs.size();
    my += ys[i] / ys.size();
  }
  long double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return double(sxy / std::sqrt(sxx * syy));
}

TEST_CASE("study from a dump") {
  TempDir dir;
  WriteText(dir / "dump.nt", StudyDump());
  // List options take one value per occurrence, so they may precede the
  // inputs.
  REQUIRE(Cli({"study", "--exclude", "music", dir / "dump.nt", "-o",
               dir.path().string()})
              .code == kExitOk);
  auto j = nlohmann::json::parse(ReadText(dir / "study.json"));
  CHECK(j["result"]["n"] == 4);
  CHECK(j["result"]["pearson_r"].get<double>() ==
        doctest::Approx(OracleR(true)).epsilon(1e-12));
  CHECK(j["baseline"]["n"] == 5);
  CHECK(j["baseline"]["pearson_r"].get<double>() ==
        doctest::Approx(OracleR(false)).epsilon(1e-12));
  CHECK(testing::SplitLines(ReadText(dir / "scatter.csv")).size() == 6);
  CHECK(ReadText(dir / "scatter.svg").find("without music") !=
        std::string::npos);
}

TEST_CASE("study from precomputed tables") {
  TempDir dir;
  WriteText(dir / "dump.nt", StudyDump());
  REQUIRE(Cli({"slice", dir / "dump.nt", "-o", dir / "s"}).code == kExitOk);
  REQUIRE(Cli({"schema", dir / "dump.nt", "-o", dir / "s"}).code == kExitOk);
  for (std::string table : {"slices.tsv", "slices.json"}) {
    REQUIRE(Cli({"study", "--slices", dir / ("s/" + table), "--schema",
                 dir / "s/schema.csv", "-o", dir / "t"})
                .code == kExitOk);
    auto j = nlohmann::json::parse(ReadText(dir / "t/study.json"));
    CHECK(j["result"]["n"] == 5);
    CHECK(j["result"]["pearson_r"].get<double>() ==
          doctest::Approx(OracleR(false)).epsilon(1e-12));
  }
  // Same answer as the one-pass run.
  REQUIRE(Cli({"study", dir / "dump.nt", "-o", dir / "u"}).code == kExitOk);
  CHECK(ReadText(dir / "u/study.json") == ReadText(dir / "t/study.json"));
  CHECK(ReadText(dir / "u/scatter.svg") == ReadText(dir / "t/scatter.svg"));

  CHECK(Cli({"study", "--slices", dir / "s/slices.tsv"}).code == kExitUsage);
}

TEST_CASE("study with too little data") {
  TempDir dir;
  WriteText(dir / "dump.nt", testing::SchemaDump("people", 2, 3, 4, 6) +
                                 testing::FactDump("people", 9));
  Run r = Cli({"study", dir / "dump.nt", "-o", dir.path().string()});
  CHECK(r.code == kExitInsufficientData);
  CHECK_FALSE(fs::exists(dir / "study.json"));
}

TEST_CASE("outputs do not depend on workers and reruns are idempotent") {
  TempDir dir;
  std::string dump = StudyDump() + SemanticsDump() +
                     testing::GenerateDump({.seed = 31, .lines = 4000,
                                            .malformed_rate = 0.01});
  WriteText(dir / "dump.nt", dump);
  auto run_all = [&](const std::string &out, int workers) {
    std::string j = std::to_string(workers);
    for (std::string cmd : {"slice", "schema", "semantics", "study"}) {
      std::vector<std::string> args = {cmd, dir / "dump.nt", "-o", out, "-j",
                                       j};
      if (cmd == "study") args.insert(args.end(), {"--exclude", "music"});
      if (cmd == "slice") {
        args.insert(args.end(), {"--format", "md", "--format", "csv",
                                 "--format", "tsv", "--dedup"});
      }
      REQUIRE(Cli(args).code == kExitOk);
    }
  };
  run_all(dir / "a", 1);
  run_all(dir / "b", 5);
  auto a = Snapshot(dir.path() / "a");
  CHECK(a.size() == 15);
  CHECK(a == Snapshot(dir.path() / "b"));
  run_all(dir / "a", 1);
  CHECK(a == Snapshot(dir.path() / "a"));
}

TEST_CASE("output directory from the environment") {
  TempDir dir;
  WriteText(dir / "dump.nt", testing::FactDump("people", 3));
  ::setenv(kOutputDirEnv, (dir / "env").c_str(), 1);
  Run r = Cli({"slice", dir / "dump.nt"});
  ::unsetenv(kOutputDirEnv);
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(dir / "env/taxonomy.md"));
}

}  // namespace
}  // namespace fbont
