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

// wwweval: graded-relevance evaluation, pooling, significance testing and
// reproducibility measures over TREC-format files.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 precondition violated,
// 4 I/O error, 5 network failure, 6 digest mismatch.

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "cli/fetch.h"
#include "cli/paper.h"
#include "wwweval/errors.h"

namespace {

using namespace wwweval;
using namespace wwweval::cli;

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kIo = 4,
  kNetwork = 5,
  kDigest = 6,
};

void add_runs(CLI::App *cmd, std::vector<std::string> &runs) {
  cmd->add_option("--runs", runs, "Run files or directories of run files")
      ->required();
}

void add_measures(CLI::App *cmd, std::vector<std::string> &measures, int &cutoff,
                  double &persistence) {
  cmd->add_option("--measure", measures, "ndcg, q, nerr or irbu (repeatable)")
      ->capture_default_str();
  cmd->add_option("--cutoff", cutoff, "Measurement depth k")->capture_default_str();
  cmd->add_option("--persistence", persistence, "iRBU persistence")
      ->capture_default_str();
}

void add_threads(CLI::App *cmd, unsigned &threads) {
  cmd->add_option("--threads", threads, "Worker threads, 0 = all cores")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Graded-relevance IR evaluation toolkit"};
  app.set_config("--config", "", "TOML/INI file supplying option values");
  app.require_subcommand(1);
  std::ostringstream out;
  std::function<void()> action;

  FetchOptions fetch;
  auto *c_fetch = app.add_subcommand("fetch", "Download manifest artifacts into the cache");
  c_fetch->add_option("--manifest", fetch.manifest, "Dataset manifest (JSON)")->required();
  c_fetch->add_option("--cache-root", fetch.cache_root,
                      "Cache directory (default $WWWEVAL_CACHE_ROOT)");
  c_fetch->add_option("artifacts", fetch.names, "Artifact names (default: all)");
  c_fetch->callback([&] { action = [&] { cmd_fetch(fetch, out); }; });

  EvalOptions eval;
  auto *c_eval = app.add_subcommand("eval", "Leaderboard per measure");
  c_eval->add_option("--qrels", eval.qrels, "Qrels file")->required();
  add_runs(c_eval, eval.runs);
  add_measures(c_eval, eval.measures, eval.cutoff, eval.persistence);
  c_eval->add_option("--matrix-dir", eval.matrix_dir,
                     "Write per-topic score matrices here");
  add_threads(c_eval, eval.threads);
  c_eval->callback([&] { action = [&] { cmd_eval(eval, out); }; });

  TukeyOptions tukey;
  auto *c_tukey = app.add_subcommand("tukey", "Randomised Tukey HSD over a score matrix");
  c_tukey->add_option("--matrix", tukey.matrix, "Per-topic matrix TSV")->required();
  c_tukey->add_option("--trials", tukey.trials, "Permutation trials B")
      ->capture_default_str();
  c_tukey->add_option("--seed", tukey.seed, "RNG seed (default: random, reported)");
  c_tukey->add_option("--alpha", tukey.alpha, "Significance level")
      ->capture_default_str();
  add_threads(c_tukey, tukey.threads);
  c_tukey->callback([&] { action = [&] { cmd_tukey(tukey, out); }; });

  CompareRankingsOptions cmp;
  auto *c_cmp = app.add_subcommand("compare-rankings",
                                   "Kendall's tau between system rankings under qrels variants");
  c_cmp->add_option("--variant", cmp.variants, "name=qrels_path (>= 2)")->required();
  add_runs(c_cmp, cmp.runs);
  add_measures(c_cmp, cmp.measures, cmp.cutoff, cmp.persistence);
  c_cmp->add_option("--ci", cmp.ci, "Interval: fisher or bootstrap")
      ->check(CLI::IsMember({"fisher", "bootstrap"}))
      ->capture_default_str();
  c_cmp->add_option("--boot", cmp.boot, "Bootstrap resamples")->capture_default_str();
  c_cmp->add_option("--seed", cmp.seed, "Bootstrap seed (default: random, reported)");
  add_threads(c_cmp, cmp.threads);
  c_cmp->callback([&] { action = [&] { cmd_compare_rankings(cmp, out); }; });

  BugDemoOptions bug;
  auto *c_bug = app.add_subcommand(
      "bug-demo", "Labels that differ between doc-id and rank-keyed joins");
  c_bug->add_option("--pool", bug.pool, "Pool file the assessor saw")->required();
  c_bug->add_option("--reference-pool", bug.reference_pool,
                    "Pool file consulted by the rank-keyed join")
      ->required();
  c_bug->add_option("--labels", bug.labels, "Raw labels: topic pool_rank level")
      ->required();
  c_bug->callback([&] { action = [&] { cmd_bug_demo(bug, out); }; });

  PoolOptions pool;
  auto *c_pool = app.add_subcommand("pool", "Build depth-k pools");
  add_runs(c_pool, pool.runs);
  c_pool->add_option("--topic", pool.topic, "Single topic, written to stdout");
  c_pool->add_option("--out-dir", pool.out_dir, "One pool file per topic");
  c_pool->add_option("--depth", pool.depth, "Pool depth")->capture_default_str();
  c_pool->add_option("--ordering", pool.ordering, "PRI or RND")->capture_default_str();
  c_pool->add_option("--seed", pool.seed, "RND seed (default: random, reported)");
  c_pool->callback([&] { action = [&] { cmd_pool(pool, out); }; });

  FuseOptions fuse;
  auto *c_fuse = app.add_subcommand("fuse", "Fuse per-assessor labels into qrels");
  c_fuse->add_option("--assessments", fuse.assessments,
                     "[id=]path of a 'topic doc level' file (repeatable)")
      ->required();
  c_fuse->add_option("--scheme", fuse.scheme, "sum or log")->capture_default_str();
  c_fuse->callback([&] { action = [&] { cmd_fuse(fuse, out); }; });

  KappaOptions kappa;
  auto *c_kappa = app.add_subcommand("kappa", "Per-topic quadratic weighted kappa");
  c_kappa->add_option("a", kappa.a, "[id=]path")->required();
  c_kappa->add_option("b", kappa.b, "[id=]path")->required();
  c_kappa->callback([&] { action = [&] { cmd_kappa(kappa, out); }; });

  StatsOptions stats;
  auto *c_stats = app.add_subcommand("stats", "Label counts per relevance level");
  c_stats->add_option("--qrels", stats.qrels, "Qrels file")->required();
  c_stats->callback([&] { action = [&] { cmd_stats(stats, out); }; });

  ReproOptions repro;
  auto *c_repro = app.add_subcommand(
      "repro", "Reproducibility (same topics) or replicability (--rep-qrels)");
  c_repro->add_option("--qrels", repro.qrels, "Qrels of the original topics")->required();
  c_repro->add_option("--rep-qrels", repro.rep_qrels,
                      "Qrels of the new topics (replicability)");
  c_repro->add_option("--orig-a", repro.orig_a, "Original advanced run")->required();
  c_repro->add_option("--orig-b", repro.orig_b, "Original baseline run")->required();
  c_repro->add_option("--rep-a", repro.rep_a, "Reproduced advanced runs");
  c_repro->add_option("--rep-b", repro.rep_b, "Reproduced baseline runs");
  add_measures(c_repro, repro.measures, repro.cutoff, repro.persistence);
  c_repro->add_option("--rbo-p", repro.rbo_p, "RBO persistence")->capture_default_str();
  c_repro->callback([&] { action = [&] { cmd_repro(repro, out); }; });

  PaperOptions paper;
  std::string table;
  auto *c_paper = app.add_subcommand("paper", "Reproduce a table of the corrected results");
  c_paper->add_option("table", table, "Table name")
      ->required()
      ->check(CLI::IsMember(paper_tables()));
  c_paper->add_option("--data-root", paper.data_root,
                      "Directory holding the data (default: the cache root)");
  c_paper->add_option("--cache-root", paper.cache_root, "Cache directory");
  c_paper->add_option("--layout", paper.layout, "JSON overriding data file locations");
  c_paper->add_option("--trials", paper.trials, "Tukey trials")->capture_default_str();
  c_paper->add_option("--boot", paper.boot, "Bootstrap resamples")->capture_default_str();
  c_paper->add_option("--seed", paper.seed, "RNG seed")->capture_default_str();
  add_threads(c_paper, paper.threads);
  c_paper->callback([&] { action = [&] { run_paper_table(table, paper, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    action();
  } catch (const ParseError &e) {
    std::cerr << "wwweval: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError &e) {
    std::cerr << "wwweval: " << e.what() << "\n";
    return kPrecondition;
  } catch (const IoError &e) {
    std::cerr << "wwweval: " << e.what() << "\n";
    return kIo;
  } catch (const NetworkError &e) {
    std::cerr << "wwweval: " << e.what() << "\n";
    return kNetwork;
  } catch (const DigestMismatchError &e) {
    std::cerr << "wwweval: " << e.what() << "\n";
    return kDigest;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "wwweval: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception &e) {
    std::cerr << "wwweval: " << e.what() << "\n";
    return kPrecondition;
  }
  std::cout << out.str();
  return std::cout.flush() ? kOk : kIo;
}
