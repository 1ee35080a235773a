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

#include "fbont/cli.h"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "fbont/line_source.h"
#include "fbont/parser.h"
#include "fbont/report.h"
#include "fbont/semantics.h"
#include "fbont/table_io.h"
#include "json.hpp"

namespace fbont {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Raised for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::vector<std::string> inputs;
  std::string out_dir;
  int workers = 1;
  std::string ns_prefix{kDefaultNamespacePrefix};
  bool strict_ids = false;
  size_t max_errors = 10;

  StreamOptions Stream() const {
    StreamOptions options;
    options.ns.prefix = ns_prefix;
    options.ns.strict_ids = strict_ids;
    options.workers = workers;
    options.max_errors = max_errors;
    return options;
  }
};

struct SliceOptions {
  bool counts_only = false;
  std::string materialize;
  std::string layout = "nested";
  std::vector<std::string> formats = {"md", "csv", "tsv"};
  std::vector<std::string> impl_domains;
  std::string sort = "grouped";
  bool dedup = false;
};

struct SchemaOptions {
  std::string score = "pooled";
};

struct SemanticsOptions {
  std::string cycle_policy = "fail";
  std::string rules;
  std::string incompat_predicate;
  std::string orientation = "property";
};

struct StudyOptions {
  std::vector<std::string> exclude;
  std::string slices;
  std::string schema;
  std::string score = "pooled";
  std::vector<std::string> impl_domains;
};

void AddInputOptions(CLI::App *cmd, InputOptions *o, bool inputs_required) {
  auto *in = cmd->add_option("inputs", o->inputs,
                             "N-Triples files, optionally gzipped; - is stdin");
  if (inputs_required) in->required();
  cmd->add_option("-o,--out", o->out_dir,
                  std::string("output directory (default $") + kOutputDirEnv +
                      " or .)");
  cmd->add_option("-j,--workers", o->workers, "parser threads")
      ->check(CLI::Range(1, 1024));
  cmd->add_option("--ns-prefix", o->ns_prefix, "Freebase namespace IRI prefix");
  cmd->add_flag("--strict-ids", o->strict_ids,
                "treat ids outside [0-9a-z_] as external IRIs");
  cmd->add_option("--max-errors", o->max_errors,
                  "malformed lines kept in the report");
}

fs::path OutputDir(const InputOptions &o) {
  std::string dir = o.out_dir;
  if (dir.empty()) {
    const char *env = std::getenv(kOutputDirEnv);
    dir = env != nullptr && *env != '\0' ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  return dir;
}

void Write(const fs::path &dir, const std::string &name,
           const std::string &content) {
  WriteFile((dir / name).string(), content);
}

json ReportJson(const ParseReport &r) {
  json j;
  j["lines_read"] = r.lines_read;
  j["triples_ok"] = r.triples_ok;
  j["lines_malformed"] = r.lines_malformed;
  j["unknown_escapes"] = r.unknown_escapes;
  j["invalid_utf8"] = r.invalid_utf8;
  j["nonstandard_ids"] = r.nonstandard_ids;
  json errors = json::array();
  for (const auto &e : r.first_errors) {
    errors.push_back({{"line", e.line}, {"reason", e.reason}});
  }
  j["first_errors"] = errors;
  return j;
}

// Streams every input through sink with continuous line numbering.
ParseReport ParseInputs(const InputOptions &o, TripleSink &sink,
                        std::ostream &err) {
  StreamOptions options = o.Stream();
  ParseReport total;
  for (const auto &path : o.inputs) {
    auto source = LineSource::Open(path);
    options.first_line = total.lines_read + 1;
    ParseReport report = StreamParse(*source, sink, options);
    total.Merge(report, options.max_errors);
  }
  if (total.lines_malformed > 0) {
    err << "warning: " << total.lines_malformed << " of " << total.lines_read
        << " lines skipped\n";
    for (const auto &e : total.first_errors) {
      err << "  line " << e.line << ": " << e.reason << "\n";
    }
  }
  return total;
}

GroupConfig Groups(const std::vector<std::string> &impl_domains) {
  GroupConfig config;
  if (!impl_domains.empty()) {
    config.implementation_domains = {impl_domains.begin(), impl_domains.end()};
  }
  return config;
}

ScoreMode ParseScoreMode(const std::string &name) {
  if (name == "pooled") return ScoreMode::kPooled;
  if (name == "mean") return ScoreMode::kMeanOfAverages;
  throw UsageError("unknown score mode '" + name + "'");
}

// ---------------------------------------------------------------------------

int RunSlice(const InputOptions &io, const SliceOptions &so,
             std::ostream &err) {
  if (so.counts_only && !so.materialize.empty()) {
    throw UsageError("--counts-only and --materialize are exclusive");
  }
  std::vector<TableFormat> formats;
  for (const auto &name : so.formats) {
    auto format = ParseTableFormat(name);
    if (!format || *format == TableFormat::kJson) {
      throw UsageError("taxonomy format must be md, csv or tsv");
    }
    formats.push_back(*format);
  }
  TaxonomyOrder order = so.sort == "alpha" ? TaxonomyOrder::kAlphabetical
                                           : TaxonomyOrder::kGrouped;
  fs::path dir = OutputDir(io);

  std::unique_ptr<SliceCounter> counter;
  if (so.materialize.empty()) {
    counter = std::make_unique<SliceCounter>();
  } else {
    MaterializeOptions m;
    m.directory = so.materialize;
    m.layout = so.layout == "flat" ? SliceLayout::kFlat : SliceLayout::kNested;
    m.ns = io.Stream().ns;
    counter = std::make_unique<SliceCounter>(m);
  }
  DistinctCounter distinct;
  std::vector<TripleSink *> sinks = {counter.get()};
  if (so.dedup) sinks.push_back(&distinct);
  TeeSink tee(sinks);

  ParseReport report = ParseInputs(io, tee, err);
  counter->Finish();

  GroupConfig groups = Groups(so.impl_domains);
  auto stats = BuildTaxonomy(counter->counts(), groups);
  for (TableFormat f : formats) {
    Write(dir, "taxonomy." + std::string(Extension(f)),
          RenderTaxonomy(stats, f, order));
  }
  Write(dir, "slices.tsv", WriteSliceTable(stats, TableFormat::kTsv));
  Write(dir, "slices.json", WriteSliceTable(stats, TableFormat::kJson));

  json j;
  j["parse"] = ReportJson(report);
  j["unclassified"] = counter->unclassified();
  j["sliced"] = TotalCount(counter->counts());
  if (so.dedup) j["distinct_triples"] = distinct.distinct();
  Write(dir, "parse_report.json", j.dump(2) + "\n");
  return kExitOk;
}

int RunSchema(const InputOptions &io, const SchemaOptions &so,
              std::ostream &err) {
  ScoreMode mode = ParseScoreMode(so.score);
  fs::path dir = OutputDir(io);
  SchemaExtractor extractor;
  ParseReport report = ParseInputs(io, extractor, err);
  Write(dir, "schema.csv", WriteSchemaTable(extractor.schemas(), mode));

  const SchemaLint &lint = extractor.lint();
  json j;
  j["parse"] = ReportJson(report);
  j["domain_object_facts"] = lint.domain_object_facts;
  j["nonstandard_subjects"] = lint.nonstandard_subjects;
  j["declaration_mismatches"] = lint.declaration_mismatches;
  json orphans = json::array();
  for (const auto &[domain, schema] : extractor.schemas()) {
    for (const auto &p : schema.Orphans()) orphans.push_back(p.Render());
  }
  j["orphan_properties"] = orphans;
  Write(dir, "schema_report.json", j.dump(2) + "\n");
  return kExitOk;
}

int RunSemantics(const InputOptions &io, const SemanticsOptions &so,
                 std::ostream &err) {
  CyclePolicy policy;
  if (so.cycle_policy == "fail") {
    policy = CyclePolicy::kFail;
  } else if (so.cycle_policy == "smallest") {
    policy = CyclePolicy::kSmallestMember;
  } else {
    throw UsageError("unknown cycle policy '" + so.cycle_policy + "'");
  }
  NotationOptions notation_options;
  notation_options.accept_reversed = so.orientation == "both";
  fs::path dir = OutputDir(io);

  RuleSet rules;
  if (!so.rules.empty()) rules = ParseRules(ReadFile(so.rules));
  std::optional<std::set<IdPath>> filter;
  if (so.incompat_predicate.empty()) filter = RuleTypes(rules);

  MergeMapBuilder merges;
  ValueNotationExtractor notations(notation_options);
  TypeAssertionCollector types(
      {"/type/object/type", "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"},
      filter);
  std::optional<RuleCollector> dump_rules;
  std::vector<TripleSink *> sinks = {&merges, &notations, &types};
  if (!so.incompat_predicate.empty()) {
    dump_rules.emplace(so.incompat_predicate);
    sinks.push_back(&*dump_rules);
  }
  TeeSink tee(sinks);
  ParseReport report = ParseInputs(io, tee, err);
  if (dump_rules) rules.insert(dump_rules->rules().begin(),
                               dump_rules->rules().end());

  MergeResolver resolver(merges.map(), policy);
  CanonicalMap canonical;
  try {
    canonical = resolver.Freeze();
  } catch (const CycleError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegrity;
  }

  // Types asserted on a duplicate count against its canonical object.
  TypeAssertions merged;
  for (const auto &[mid, set] : types.assertions()) {
    auto &into = merged[canonical.Lookup(mid)];
    into.insert(set.begin(), set.end());
  }
  auto violations = CheckIncompatibilities(merged, rules);

  Write(dir, "merges.tsv", WriteMergeTable(canonical.SortedEntries()));
  Write(dir, "valuenotes.csv", WriteNotationTable(notations.notations()));
  Write(dir, "violations.csv", WriteViolationTable(violations));

  const MergeMap &map = merges.map();
  json j;
  j["parse"] = ReportJson(report);
  j["merge_edges"] = map.edges.size();
  j["merge_conflicts"] = map.conflicts;
  j["merge_self_edges"] = map.self_edges;
  j["merge_skipped_non_mid"] = map.skipped_non_mid;
  json cycles = json::array();
  for (const auto &cycle : resolver.cycles()) {
    json members = json::array();
    for (const auto &m : cycle) members.push_back(m.Render());
    cycles.push_back(members);
  }
  j["merge_cycles"] = cycles;
  j["has_value"] = notations.count(NotationKind::kHasValue);
  j["has_no_value"] = notations.count(NotationKind::kHasNoValue);
  j["notation_nonconforming"] = notations.nonconforming();
  j["rules"] = rules.size();
  j["violations"] = violations.size();
  Write(dir, "semantics_report.json", j.dump(2) + "\n");
  return kExitOk;
}

TableFormat FormatFromPath(const std::string &path) {
  std::string ext = fs::path(path).extension().string();
  if (ext == ".json") return TableFormat::kJson;
  if (ext == ".csv") return TableFormat::kCsv;
  return TableFormat::kTsv;
}

int RunStudy(const InputOptions &io, const StudyOptions &so,
             std::ostream &err) {
  ScoreMode mode = ParseScoreMode(so.score);
  bool need_dump = so.slices.empty() || so.schema.empty();
  if (need_dump && io.inputs.empty()) {
    throw UsageError("study needs input dumps or both --slices and --schema");
  }
  fs::path dir = OutputDir(io);

  SliceCounts counts;
  std::vector<SchemaRow> schema;
  if (need_dump) {
    SliceCounter counter;
    SchemaExtractor extractor;
    std::vector<TripleSink *> sinks;
    if (so.slices.empty()) sinks.push_back(&counter);
    if (so.schema.empty()) sinks.push_back(&extractor);
    TeeSink tee(sinks);
    ParseInputs(io, tee, err);
    counts = counter.counts();
    if (so.schema.empty()) {
      schema = ReadSchemaTable(WriteSchemaTable(extractor.schemas(), mode));
    }
  }
  if (!so.slices.empty()) {
    counts = ReadSliceTable(ReadFile(so.slices), FormatFromPath(so.slices));
  }
  if (!so.schema.empty()) schema = ReadSchemaTable(ReadFile(so.schema));

  GroupConfig groups = Groups(so.impl_domains);
  std::vector<std::string> unmatched;
  auto rows = JoinStudyRows(counts, schema, groups, &unmatched);
  if (!unmatched.empty()) {
    err << "warning: " << unmatched.size()
        << " domains lack a slice or a complexity score\n";
  }

  std::set<std::string> exclusions(so.exclude.begin(), so.exclude.end());
  StudyResult result;
  std::optional<StudyResult> baseline;
  try {
    result = ::fbont::RunStudy(rows, exclusions);
    if (!result.excluded.empty()) baseline = ::fbont::RunStudy(rows);
  } catch (const StatsError &e) {
    err << "error: insufficient data: " << e.what() << "\n";
    return kExitInsufficientData;
  }
  for (const auto &name : result.unknown_exclusions) {
    err << "warning: excluded domain '" << name << "' is not in the study\n";
  }

  auto points = ScatterPoints(rows, result);
  Write(dir, "study.json", RenderStudyJson(result, baseline));
  Write(dir, "scatter.csv", RenderScatterCsv(points));
  Write(dir, "scatter.svg", RenderScatterSvg(points, result, baseline));
  return kExitOk;
}

}  // namespace

std::vector<StudyRow> JoinStudyRows(const SliceCounts &counts,
                                    const std::vector<SchemaRow> &schema,
                                    const GroupConfig &groups,
                                    std::vector<std::string> *unmatched) {
  std::map<std::string, double> scores;
  std::set<std::string> missing;
  for (const auto &row : schema) {
    if (groups.Assign(SliceKey::Domain(row.domain)) != Group::kSubjectMatter) {
      continue;
    }
    if (row.complexity_score) {
      scores[row.domain] = *row.complexity_score;
    } else {
      missing.insert(row.domain);
    }
  }
  std::vector<StudyRow> rows;
  std::set<std::string> sliced;
  for (const auto &[key, count] : counts) {
    if (groups.Assign(key) != Group::kSubjectMatter) continue;
    sliced.insert(key.name);
    auto it = scores.find(key.name);
    if (it == scores.end()) {
      missing.insert(key.name);
      continue;
    }
    rows.push_back({key.name, count, it->second});
  }
  for (const auto &[domain, score] : scores) {
    if (!sliced.contains(domain)) missing.insert(domain);
  }
  if (unmatched != nullptr) unmatched->assign(missing.begin(), missing.end());
  return rows;
}

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Freebase dump slicing, schema and semantics analysis", "fbont"};
  app.require_subcommand(1);

  InputOptions io;
  SliceOptions slice_opts;
  SchemaOptions schema_opts;
  SemanticsOptions sem_opts;
  StudyOptions study_opts;

  auto *slice = app.add_subcommand("slice", "count and split triples by domain");
  AddInputOptions(slice, &io, true);
  slice->add_flag("--counts-only", slice_opts.counts_only,
                  "count slices without writing them");
  slice->add_option("--materialize", slice_opts.materialize,
                    "write each slice as N-Triples under DIR");
  slice->add_option("--layout", slice_opts.layout, "nested or flat")
      ->check(CLI::IsMember({"nested", "flat"}));
  slice->add_option("--format", slice_opts.formats, "md, csv, tsv")
      ->delimiter(',')
      ->allow_extra_args(false);
  slice->add_option("--impl-domains", slice_opts.impl_domains,
                    "implementation domains, replacing the defaults")
      ->delimiter(',')
      ->allow_extra_args(false);
  slice->add_option("--sort", slice_opts.sort, "grouped or alpha")
      ->check(CLI::IsMember({"grouped", "alpha"}));
  slice->add_flag("--dedup", slice_opts.dedup, "also count distinct triples");

  auto *schema = app.add_subcommand("schema", "per-domain ontology statistics");
  AddInputOptions(schema, &io, true);
  schema->add_option("--score", schema_opts.score, "pooled or mean")
      ->check(CLI::IsMember({"pooled", "mean"}));

  auto *semantics =
      app.add_subcommand("semantics", "merges, value notations, violations");
  AddInputOptions(semantics, &io, true);
  semantics->add_option("--cycle-policy", sem_opts.cycle_policy,
                        "fail or smallest")
      ->check(CLI::IsMember({"fail", "smallest"}));
  semantics->add_option("--rules", sem_opts.rules,
                        "incompatible type pairs, one per line");
  semantics->add_option("--incompat-predicate", sem_opts.incompat_predicate,
                        "predicate asserting incompatibility in the dump");
  semantics->add_option("--orientation", sem_opts.orientation,
                        "property (property-subject only) or both")
      ->check(CLI::IsMember({"property", "both"}));

  auto *study = app.add_subcommand("study", "complexity vs size correlation");
  AddInputOptions(study, &io, false);
  study->add_option("--exclude", study_opts.exclude, "domains to leave out")
      ->delimiter(',')
      ->allow_extra_args(false);
  study->add_option("--slices", study_opts.slices,
                    "slice table from a previous slice run");
  study->add_option("--schema", study_opts.schema,
                    "schema.csv from a previous schema run");
  study->add_option("--score", study_opts.score, "pooled or mean")
      ->check(CLI::IsMember({"pooled", "mean"}));
  study->add_option("--impl-domains", study_opts.impl_domains,
                    "implementation domains, replacing the defaults")
      ->delimiter(',')
      ->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*slice) return RunSlice(io, slice_opts, err);
    if (*schema) return RunSchema(io, schema_opts, err);
    if (*semantics) return RunSemantics(io, sem_opts, err);
    if (*study) return RunStudy(io, study_opts, err);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const StreamError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception &e) {
    // Unreadable or malformed side inputs (rules, slice and schema tables).
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  std::vector<const char *> argv = {"fbont"};
  for (const auto &a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fbont
