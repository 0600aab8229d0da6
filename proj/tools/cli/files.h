// Copyright 2026 The wwweval Authors.
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

// Loading the on-disk inputs of the command-line tool.

#ifndef WWWEVAL_TOOLS_CLI_FILES_H_
#define WWWEVAL_TOOLS_CLI_FILES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "wwweval/trec_io.h"

namespace wwweval::cli {

// Throws IoError when the file cannot be read.
std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &text);

// Each path is a run file or a directory of run files (regular files, in
// name order, hidden files skipped). Runs keep that order; a run_id seen
// twice is a PreconditionError. Parse errors name the offending file.
std::vector<Run> load_runs(const std::vector<std::string> &paths);

Qrels load_qrels(const std::filesystem::path &path);
AssessmentSet load_assessments(const std::filesystem::path &path,
                               const std::string &assessor_id);

}  // namespace wwweval::cli

#endif  // WWWEVAL_TOOLS_CLI_FILES_H_
