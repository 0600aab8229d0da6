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

#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "cli/fetch.h"
#include "cli/files.h"
#include "wwweval/errors.h"
#include "wwweval/pooling.h"
#include "wwweval/report.h"
#include "wwweval/repro.h"

namespace wwweval::cli {

namespace fs = std::filesystem;

std::uint64_t choose_seed(const std::optional<std::uint64_t> &seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

namespace {

std::vector<MeasureKind> parse_measures(const std::vector<std::string> &names) {
  if (names.empty()) throw PreconditionError("no measure given");
  std::vector<MeasureKind> kinds;
  for (const auto &n : names) {
    MeasureKind k = parse_measure(n);
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end())
      kinds.push_back(k);
  }
  return kinds;
}

std::string measure_label(MeasureKind kind, int cutoff) {
  return std::string(measure_name(kind)) + "@" + std::to_string(cutoff);
}

// "id=path" or a bare path, whose file stem becomes the id.
std::pair<std::string, std::string> split_named(const std::string &arg) {
  auto eq = arg.find('=');
  if (eq == std::string::npos)
    return {fs::path(arg).stem().string(), arg};
  if (eq == 0 || eq + 1 == arg.size())
    throw PreconditionError("expected name=path, got '" + arg + "'");
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::string format_effect_size(double v) {
  return std::isinf(v) ? "inf" : format_fixed(v, 4);
}

}  // namespace

void cmd_fetch(const FetchOptions &opts, std::ostream &out) {
  const DatasetManifest manifest = parse_manifest(read_file(opts.manifest));
  const fs::path root = resolve_cache_root(opts.cache_root);
  std::vector<const Artifact *> wanted;
  if (opts.names.empty()) {
    for (const auto &a : manifest.artifacts) wanted.push_back(&a);
  } else {
    for (const auto &n : opts.names) wanted.push_back(&manifest.find(n));
  }
  TsvTable table{{"artifact", "path"}, {}};
  for (const Artifact *a : wanted) {
    std::cerr << "fetch: " << a->name << "\n";
    table.rows.push_back({a->name, fetch_artifact(*a, root).string()});
  }
  out << write_tsv_report(table);
}

Leaderboard leaderboard(std::span<const Run> runs, const Qrels &qrels,
                        MeasureKind measure, const MeasureConfig &config,
                        unsigned threads) {
  auto m = make_measure(measure);
  Leaderboard board{measure, score_matrix(runs, qrels, *m, config, threads), {}};
  const auto means = board.matrix.column_means();
  for (std::size_t s = 0; s < means.size(); ++s)
    board.rows.emplace_back(board.matrix.systems()[s], means[s]);
  std::sort(board.rows.begin(), board.rows.end(), [](const auto &a, const auto &b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return board;
}

std::string matrix_file_name(MeasureKind measure, int cutoff) {
  return std::string(measure_name(measure)) + "@" + std::to_string(cutoff) +
         ".tsv";
}

void cmd_eval(const EvalOptions &opts, std::ostream &out) {
  const auto kinds = parse_measures(opts.measures);
  MeasureConfig config{opts.cutoff, opts.persistence};
  config.validate();
  const Qrels qrels = load_qrels(opts.qrels);
  const auto runs = load_runs(opts.runs);
  if (!opts.matrix_dir.empty()) fs::create_directories(opts.matrix_dir);

  bool first = true;
  for (MeasureKind kind : kinds) {
    Leaderboard board = leaderboard(runs, qrels, kind, config, opts.threads);
    TsvTable table{{"run", measure_label(kind, opts.cutoff)}, {}};
    for (const auto &[run, mean] : board.rows) table.rows.push_back({run, mean});
    if (!first) out << "\n";
    first = false;
    out << write_tsv_report(table);
    if (!opts.matrix_dir.empty())
      write_file(fs::path(opts.matrix_dir) / matrix_file_name(kind, opts.cutoff),
                 serialize_score_matrix(board.matrix));
  }
}

void write_tukey_report(const TukeyResult &r, double alpha, std::ostream &out) {
  out << "# randomised Tukey HSD trials=" << r.trials << " seed=" << r.seed
      << " alpha=" << format_fixed(alpha, 4) << "\n";
  out << "# V_E2=" << format_fixed(r.residual_variance, 4) << "\n";

  TsvTable pairs{{"system", "outperforms"}, {}};
  for (const auto &row : significant_pairs(r, alpha)) {
    std::string losers;
    for (const auto &l : row.losers) losers += (losers.empty() ? "" : ",") + l;
    pairs.rows.push_back({row.winner, losers});
  }
  out << write_tsv_report(pairs);

  const std::size_t m = r.systems.size();
  TsvTable means{{"system", "mean"}, {}};
  for (std::size_t i = 0; i < m; ++i) means.rows.push_back({r.systems[i], r.means[i]});
  out << "\n# means\n" << write_tsv_report(means);

  std::vector<std::string> header{"system"};
  header.insert(header.end(), r.systems.begin(), r.systems.end());
  TsvTable p{header, {}};
  TsvTable es{header, {}};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<ReportCell> prow{r.systems[i]};
    std::vector<ReportCell> erow{r.systems[i]};
    for (std::size_t j = 0; j < m; ++j) {
      prow.push_back(r.p_values(i, j));
      erow.push_back(format_effect_size(r.effect_sizes(i, j)));
    }
    p.rows.push_back(std::move(prow));
    es.rows.push_back(std::move(erow));
  }
  out << "\n# p-values\n" << write_tsv_report(p);
  out << "\n# effect sizes\n" << write_tsv_report(es);
}

void cmd_tukey(const TukeyOptions &opts, std::ostream &out) {
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
    throw PreconditionError("alpha must lie in (0, 1)");
  const ScoreMatrix matrix = parse_score_matrix(read_file(opts.matrix));
  const std::uint64_t seed = choose_seed(opts.seed);
  write_tukey_report(
      randomized_tukey_hsd(matrix, opts.trials, seed, opts.threads), opts.alpha,
      out);
}

void cmd_compare_rankings(const CompareRankingsOptions &opts, std::ostream &out) {
  if (opts.variants.size() < 2)
    throw PreconditionError("compare-rankings needs at least two variants");
  const auto kinds = parse_measures(opts.measures);
  MeasureConfig config{opts.cutoff, opts.persistence};
  config.validate();
  const auto runs = load_runs(opts.runs);

  std::vector<std::pair<std::string, Qrels>> variants;
  std::set<std::string> names;
  for (const auto &arg : opts.variants) {
    auto [name, path] = split_named(arg);
    if (!names.insert(name).second)
      throw PreconditionError("duplicate variant name " + name);
    variants.emplace_back(name, load_qrels(path));
  }
  std::vector<std::string> run_ids;
  for (const auto &r : runs) run_ids.push_back(r.run_id);
  const bool bootstrap = opts.ci == "bootstrap";
  if (!bootstrap && opts.ci != "fisher")
    throw PreconditionError("unknown interval method '" + opts.ci + "'");
  std::uint64_t seed = 0;
  if (bootstrap) {
    seed = choose_seed(opts.seed);
    out << "# kendall tau-b, 95% percentile bootstrap boot=" << opts.boot
        << " seed=" << seed << "\n";
  } else {
    out << "# kendall tau-b, Fisher z 95% interval, " << runs.size()
        << " runs\n";
  }
  TsvTable table{{"measure", "variant_a", "variant_b", "tau", "ci_low", "ci_high"},
                 {},
                 3};
  for (MeasureKind kind : kinds) {
    auto m = make_measure(kind);
    std::vector<std::vector<double>> means;
    for (const auto &[name, qrels] : variants) {
      ScoreMatrix matrix = score_matrix(runs, qrels, *m, config, opts.threads);
      if (matrix.systems() != run_ids)
        throw PreconditionError("variant " + name + " scored a different run set");
      means.push_back(matrix.column_means());
    }
    for (std::size_t i = 0; i < variants.size(); ++i)
      for (std::size_t j = i + 1; j < variants.size(); ++j) {
        std::vector<ReportCell> row{measure_label(kind, opts.cutoff),
                                    variants[i].first, variants[j].first};
        if (bootstrap) {
          TauResult t = kendall_tau(means[i], means[j], opts.boot, seed, opts.threads);
          row.insert(row.end(), {t.tau, t.ci_low, t.ci_high});
        } else if (runs.size() > 4) {
          TauResult t = kendall_tau_fisher(means[i], means[j]);
          row.insert(row.end(), {t.tau, t.ci_low, t.ci_high});
        } else {
          // The Fisher z standard error needs more than four systems.
          row.insert(row.end(), {kendall_tau_b(means[i], means[j]), std::string("NA"),
                                 std::string("NA")});
        }
        table.rows.push_back(std::move(row));
      }
  }
  out << write_tsv_report(table);
}

void cmd_bug_demo(const BugDemoOptions &opts, std::ostream &out) {
  const PoolFile pool = parse_pool(read_file(opts.pool));
  const PoolFile reference = parse_pool(read_file(opts.reference_pool));
  const auto raw = parse_raw_labels(read_file(opts.labels));
  auto it = raw.find(pool.topic_id);
  if (it == raw.end())
    throw PreconditionError("no labels for topic " + pool.topic_id);
  const auto divergence = join_divergence(pool, it->second, reference);

  out << "# topic=" << pool.topic_id << " pool_size=" << pool.entries.size()
      << " divergent=" << divergence.size() << "\n";
  TsvTable table{{"doc_id", "by_docid", "by_rank"}, {}};
  for (const auto &d : divergence)
    table.rows.push_back({d.doc_id, "L" + std::to_string(d.correct_level),
                          "L" + std::to_string(d.buggy_level)});
  out << write_tsv_report(table);
}

void cmd_pool(const PoolOptions &opts, std::ostream &out) {
  const auto runs = load_runs(opts.runs);
  PoolSpec spec{opts.depth, parse_pool_ordering(opts.ordering), 0};
  if (spec.ordering == PoolOrdering::kRnd) spec.seed = choose_seed(opts.seed);

  if (!opts.topic.empty()) {
    out << serialize_pool(build_pool(runs, opts.topic, spec));
    return;
  }
  if (opts.out_dir.empty())
    throw PreconditionError("pooling every topic needs --out-dir");
  std::set<std::string> topics;
  for (const auto &run : runs)
    for (const auto &[topic, docs] : run.rankings) topics.insert(topic);
  fs::create_directories(opts.out_dir);
  out << "# ordering=" << to_string(spec.ordering) << " seed=" << spec.seed
      << " depth=" << spec.depth << "\n";
  TsvTable table{{"topic", "size", "path"}, {}};
  for (const auto &topic : topics) {
    PoolFile pool = build_pool(runs, topic, spec);
    fs::path path = fs::path(opts.out_dir) / (topic + ".pool");
    write_file(path, serialize_pool(pool));
    table.rows.push_back(
        {topic, static_cast<std::int64_t>(pool.entries.size()), path.string()});
  }
  out << write_tsv_report(table);
}

namespace {

std::vector<AssessmentSet> load_named_assessments(
    const std::vector<std::string> &args) {
  std::vector<AssessmentSet> sets;
  for (const auto &arg : args) {
    auto [id, path] = split_named(arg);
    sets.push_back(load_assessments(path, id));
  }
  return sets;
}

FusionScheme parse_scheme(const std::string &name) {
  if (name == "sum") return FusionScheme::kSum;
  if (name == "log") return FusionScheme::kLog;
  throw PreconditionError("unknown fusion scheme '" + name + "' (sum, log)");
}

}  // namespace

void cmd_fuse(const FuseOptions &opts, std::ostream &out) {
  const auto sets = load_named_assessments(opts.assessments);
  out << serialize_qrels(fuse(sets, parse_scheme(opts.scheme)));
}

void cmd_kappa(const KappaOptions &opts, std::ostream &out) {
  const auto sets = load_named_assessments({opts.a, opts.b});
  std::set<std::string> topics;
  for (const auto &[key, level] : sets[0].labels) topics.insert(key.first);
  TsvTable table{{"topic", "kappa"}, {}, 3};
  for (const auto &topic : topics) {
    const std::string one[] = {topic};
    table.rows.push_back({topic, mean_per_topic_kappa(sets[0], sets[1], one)});
  }
  table.rows.push_back({std::string("mean"), mean_per_topic_kappa(sets[0], sets[1])});
  out << "# " << sets[0].assessor_id << " vs " << sets[1].assessor_id
      << ", quadratic weights\n";
  out << write_tsv_report(table);
}

void cmd_stats(const StatsOptions &opts, std::ostream &out) {
  const LevelStats stats = qrels_stats(load_qrels(opts.qrels));
  TsvTable table{{}, {{}}};
  for (auto it = stats.counts.rbegin(); it != stats.counts.rend(); ++it) {
    table.header.push_back("L" + std::to_string(it->first));
    table.rows[0].push_back(static_cast<std::int64_t>(it->second));
  }
  table.header.push_back("total");
  table.rows[0].push_back(static_cast<std::int64_t>(stats.total));
  out << write_tsv_report(table);
}

namespace {

// Per-topic scores of `runs` in `qrels` topic order.
std::map<std::string, std::vector<double>> per_topic(const std::vector<Run> &runs,
                                                     const Qrels &qrels,
                                                     const Measure &measure,
                                                     const MeasureConfig &config,
                                                     std::vector<std::string> *topics) {
  ScoreMatrix m = score_matrix(runs, qrels, measure, config);
  if (topics) *topics = m.topics();
  std::map<std::string, std::vector<double>> out;
  for (std::size_t s = 0; s < m.num_systems(); ++s)
    out[m.systems()[s]] = m.column(s);
  return out;
}

Run load_one_run(const std::string &path) { return load_runs({path}).front(); }

}  // namespace

void cmd_repro(const ReproOptions &opts, std::ostream &out) {
  const auto kinds = parse_measures(opts.measures);
  MeasureConfig config{opts.cutoff, opts.persistence};
  config.validate();
  if (opts.rep_a.empty() && opts.rep_b.empty())
    throw PreconditionError("repro needs at least one --rep-a or --rep-b run");
  const bool replicate = !opts.rep_qrels.empty();
  const Qrels qrels = load_qrels(opts.qrels);
  const Qrels rep_qrels = replicate ? load_qrels(opts.rep_qrels) : qrels;

  const Run orig_a = load_one_run(opts.orig_a);
  const Run orig_b = load_one_run(opts.orig_b);
  std::vector<Run> rep_a, rep_b;
  for (const auto &p : opts.rep_a) rep_a.push_back(load_one_run(p));
  for (const auto &p : opts.rep_b) rep_b.push_back(load_one_run(p));
  std::vector<Run> rep_all(rep_a);
  rep_all.insert(rep_all.end(), rep_b.begin(), rep_b.end());

  out << "# " << (replicate ? "replicability" : "reproducibility")
      << " orig_a=" << orig_a.run_id << " orig_b=" << orig_b.run_id
      << " cutoff=" << opts.cutoff << "\n";

  std::vector<std::string> run_header{"role", "run", "measure"};
  if (!replicate) run_header.push_back("rmse_abs");
  run_header.push_back("p_value");
  TsvTable runs_table{run_header, {}};
  std::vector<std::string> pair_header{"rep_a", "rep_b", "measure"};
  if (!replicate) pair_header.push_back("rmse_delta");
  pair_header.insert(pair_header.end(), {"effect_ratio", "delta_ri"});
  TsvTable pairs_table{pair_header, {}};

  for (MeasureKind kind : kinds) {
    auto m = make_measure(kind);
    const std::string label = measure_label(kind, opts.cutoff);
    std::vector<std::string> orig_topics, rep_topics;
    auto orig = per_topic({orig_a, orig_b}, qrels, *m, config, &orig_topics);
    auto rep = per_topic(rep_all, rep_qrels, *m, config, &rep_topics);
    const auto &oa = orig.at(orig_a.run_id);
    const auto &ob = orig.at(orig_b.run_id);

    auto run_row = [&](const char *role, const Run &run, const std::vector<double> &o) {
      const auto &r = rep.at(run.run_id);
      std::vector<ReportCell> row{std::string(role), run.run_id, label};
      if (!replicate) {
        row.push_back(rmse_abs(o, r));
        row.push_back(PValue{paired_ttest(o, r)});
      } else {
        row.push_back(PValue{unpaired_ttest(o, r)});
      }
      runs_table.rows.push_back(std::move(row));
    };
    for (const auto &run : rep_a) run_row("REP A-run", run, oa);
    for (const auto &run : rep_b) run_row("REP B-run", run, ob);

    for (const auto &ra : rep_a)
      for (const auto &rb : rep_b) {
        RunPairScores o{orig_topics, oa, ob};
        RunPairScores r{rep_topics, rep.at(ra.run_id), rep.at(rb.run_id)};
        std::vector<ReportCell> row{ra.run_id, rb.run_id, label};
        if (!replicate) {
          Reproduction rp(o, r);
          row.push_back(rp.rmse_delta());
          row.push_back(rp.effect_ratio());
          row.push_back(rp.delta_ri());
        } else {
          Replication rp(o, r);
          row.push_back(rp.effect_ratio());
          row.push_back(rp.delta_ri());
        }
        pairs_table.rows.push_back(std::move(row));
      }
  }
  out << write_tsv_report(runs_table);
  if (!pairs_table.rows.empty()) out << "\n" << write_tsv_report(pairs_table);

  if (replicate) return;
  // Document ordering agreement needs no qrels: mean KTU and RBO over the
  // topics both runs answer.
  TsvTable order{{"role", "run", "ktu", "rbo"}, {}};
  auto order_row = [&](const char *role, const Run &orig_run, const Run &run) {
    double ktu = 0.0, overlap = 0.0;
    std::size_t n = 0;
    for (const auto &[topic, docs] : orig_run.rankings) {
      if (!run.rankings.count(topic)) continue;
      const auto a = orig_run.doc_ids(topic);
      const auto b = run.doc_ids(topic);
      const auto k = static_cast<std::size_t>(opts.cutoff);
      ktu += kendall_tau_union(a, b, opts.cutoff);
      overlap += rbo(std::span(a).first(std::min(k, a.size())),
                     std::span(b).first(std::min(k, b.size())), opts.rbo_p);
      ++n;
    }
    if (n == 0)
      throw PreconditionError(run.run_id + " shares no topic with " +
                              orig_run.run_id);
    order.rows.push_back({std::string(role), run.run_id, ktu / n, overlap / n});
  };
  for (const auto &run : rep_a) order_row("REP A-run", orig_a, run);
  for (const auto &run : rep_b) order_row("REP B-run", orig_b, run);
  out << "\n# ordering cutoff=" << opts.cutoff
      << " rbo_p=" << format_fixed(opts.rbo_p, 2) << "\n"
      << write_tsv_report(order);
}

}  // namespace wwweval::cli
