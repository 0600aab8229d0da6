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

// Subcommands of the wwweval tool. Each writes its TSV report to `out` and
// throws a wwweval::Error subclass on failure; main.cc maps those to exit
// codes. Lines starting with '#' are report headers.

#ifndef WWWEVAL_TOOLS_CLI_COMMANDS_H_
#define WWWEVAL_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wwweval/fusion.h"
#include "wwweval/measures.h"
#include "wwweval/stats.h"
#include "wwweval/trec_io.h"

namespace wwweval::cli {

// An explicit seed, or a fresh one from std::random_device.
std::uint64_t choose_seed(const std::optional<std::uint64_t> &seed);

struct FetchOptions {
  std::string manifest;
  std::optional<std::string> cache_root;
  std::vector<std::string> names;  // empty: every artifact
};
// One "name<TAB>path" row per artifact.
void cmd_fetch(const FetchOptions &opts, std::ostream &out);

struct EvalOptions {
  std::string qrels;
  std::vector<std::string> runs;
  std::vector<std::string> measures{"ndcg"};
  int cutoff = 10;
  double persistence = 0.99;
  std::string matrix_dir;  // per-topic matrices, one file per measure
  unsigned threads = 1;
};

struct Leaderboard {
  MeasureKind measure;
  ScoreMatrix matrix;
  // (run_id, mean) by mean descending, run_id ascending.
  std::vector<std::pair<std::string, double>> rows;
};

Leaderboard leaderboard(std::span<const Run> runs, const Qrels &qrels,
                        MeasureKind measure, const MeasureConfig &config,
                        unsigned threads);
std::string matrix_file_name(MeasureKind measure, int cutoff);

void cmd_eval(const EvalOptions &opts, std::ostream &out);

struct TukeyOptions {
  std::string matrix;
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;
  double alpha = 0.05;
  unsigned threads = 1;
};
void cmd_tukey(const TukeyOptions &opts, std::ostream &out);
void write_tukey_report(const TukeyResult &result, double alpha,
                        std::ostream &out);

struct CompareRankingsOptions {
  std::vector<std::string> variants;  // name=qrels_path
  std::vector<std::string> runs;
  std::vector<std::string> measures{"ndcg"};
  int cutoff = 10;
  double persistence = 0.99;
  std::string ci = "fisher";  // or "bootstrap"
  std::size_t boot = 10000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};
void cmd_compare_rankings(const CompareRankingsOptions &opts, std::ostream &out);

struct BugDemoOptions {
  std::string pool;            // the ordering the assessor saw
  std::string reference_pool;  // the ordering the buggy join consulted
  std::string labels;          // "topic pool_rank level"
};
void cmd_bug_demo(const BugDemoOptions &opts, std::ostream &out);

struct PoolOptions {
  std::vector<std::string> runs;
  std::string topic;    // empty: every topic, written to out_dir
  std::string out_dir;
  int depth = 50;
  std::string ordering = "PRI";
  std::optional<std::uint64_t> seed;
};
void cmd_pool(const PoolOptions &opts, std::ostream &out);

struct FuseOptions {
  std::vector<std::string> assessments;  // [id=]path
  std::string scheme = "sum";
};
void cmd_fuse(const FuseOptions &opts, std::ostream &out);

struct KappaOptions {
  std::string a;  // [id=]path
  std::string b;
};
void cmd_kappa(const KappaOptions &opts, std::ostream &out);

struct StatsOptions {
  std::string qrels;
};
void cmd_stats(const StatsOptions &opts, std::ostream &out);

struct ReproOptions {
  std::string qrels;      // original topics
  std::string rep_qrels;  // set for replicability (different topics)
  std::string orig_a;     // run files
  std::string orig_b;
  std::vector<std::string> rep_a;
  std::vector<std::string> rep_b;
  std::vector<std::string> measures{"ndcg", "q", "nerr", "irbu"};
  int cutoff = 10;
  double persistence = 0.99;
  double rbo_p = 0.8;
};
void cmd_repro(const ReproOptions &opts, std::ostream &out);

}  // namespace wwweval::cli

#endif  // WWWEVAL_TOOLS_CLI_COMMANDS_H_
