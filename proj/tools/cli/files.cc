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

#include "cli/files.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "wwweval/errors.h"

namespace wwweval::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

namespace {

// Parse errors carry the file name so a directory of runs stays debuggable.
template <typename F>
auto parse_file(const fs::path &path, F parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace

std::vector<Run> load_runs(const std::vector<std::string> &paths) {
  std::vector<fs::path> files;
  for (const auto &p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> entries;
      for (const auto &entry : fs::directory_iterator(p)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && !name.starts_with('.'))
          entries.push_back(entry.path());
      }
      std::sort(entries.begin(), entries.end());
      files.insert(files.end(), entries.begin(), entries.end());
    } else if (fs::exists(p, ec)) {
      files.emplace_back(p);
    } else {
      throw IoError("no such run file or directory: " + p);
    }
  }
  if (files.empty()) throw PreconditionError("no run files given");

  std::vector<Run> runs;
  std::set<std::string> seen;
  for (const auto &f : files) {
    Run run = parse_file(f, [](std::string_view t) { return parse_run(t); });
    if (!seen.insert(run.run_id).second)
      throw PreconditionError("duplicate run id " + run.run_id + " in " +
                              f.string());
    runs.push_back(std::move(run));
  }
  return runs;
}

Qrels load_qrels(const fs::path &path) {
  return parse_file(path, [](std::string_view t) { return parse_qrels(t); });
}

AssessmentSet load_assessments(const fs::path &path,
                               const std::string &assessor_id) {
  return parse_file(path, [&](std::string_view t) {
    return parse_assessments(t, assessor_id);
  });
}

}  // namespace wwweval::cli
