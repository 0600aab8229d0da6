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

// Table reproductions for the corrected WWW-2/3/4 collections. Each command
// fixes the qrels, cutoffs and measures of one published table; only the
// data location is configurable.
//
// Inputs are found through a layout: logical name -> path relative to the
// data root. The defaults below can be overridden key by key with a JSON
// object file, so a differently organised archive needs no code change.

#ifndef WWWEVAL_TOOLS_CLI_PAPER_H_
#define WWWEVAL_TOOLS_CLI_PAPER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wwweval::cli {

class DataLayout {
 public:
  // Built-in defaults, e.g. "www2.qrels" -> "www2/qrels.txt".
  explicit DataLayout(std::filesystem::path root);

  // Merges a JSON object of string values over the current entries.
  void override_from_json(std::string_view json);

  // Throws PreconditionError for an unknown key.
  std::filesystem::path path(const std::string &key) const;
  bool available(const std::string &key) const;

  const std::filesystem::path &root() const { return root_; }
  const std::map<std::string, std::string> &entries() const { return entries_; }

 private:
  std::filesystem::path root_;
  std::map<std::string, std::string> entries_;
};

// The runs of each reproducibility experiment.
struct CentreRuns {
  std::string orig_a = "THUIR-E-CO-MAN-Base-2";
  std::string orig_b = "THUIR-E-CO-PU-Base-4";
  std::vector<std::string> rep_a{"KASYS-E-CO-REP-2", "SLWWW-E-CO-REP-4"};
  std::vector<std::string> rep_b{"KASYS-E-CO-REP-3"};
};

struct PaperOptions {
  std::optional<std::string> data_root;  // default: the cache root
  std::optional<std::string> cache_root;
  std::string layout;  // optional JSON overrides
  std::size_t trials = 10000;
  std::size_t boot = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

DataLayout make_layout(const PaperOptions &opts);

// Table names accepted by run_paper_table, in display order.
const std::vector<std::string> &paper_tables();

// Writes the named table. Throws PreconditionError for an unknown name.
void run_paper_table(const std::string &name, const PaperOptions &opts,
                     std::ostream &out);

}  // namespace wwweval::cli

#endif  // WWWEVAL_TOOLS_CLI_PAPER_H_
