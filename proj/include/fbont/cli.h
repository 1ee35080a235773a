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

// The fbont command line: slice, schema, semantics and study subcommands.

#ifndef FBONT_CLI_H_
#define FBONT_CLI_H_

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fbont/schema.h"
#include "fbont/slicer.h"
#include "fbont/stats.h"

namespace fbont {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitInsufficientData = 3,
  kExitIntegrity = 4,
};

// Environment variable naming the default output directory.
inline constexpr char kOutputDirEnv[] = "FBONT_OUT";

// Runs one command line. Diagnostics go to err; out only receives help
// text. Returns an ExitCode.
int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err);

// Convenience overload; args excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

// Pairs every subject-matter slice with its domain's complexity score.
// Slices without a scored schema row, and scored domains without a slice,
// are reported in *unmatched (sorted) and left out.
std::vector<StudyRow> JoinStudyRows(const SliceCounts &counts,
                                    const std::vector<SchemaRow> &schema,
                                    const GroupConfig &groups,
                                    std::vector<std::string> *unmatched);

}  // namespace fbont

#endif  // FBONT_CLI_H_
