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

#include "cli/paper.h"

#include <functional>

#include "cli/commands.h"
#include "cli/fetch.h"
#include "cli/files.h"
#include "json.hpp"
#include "wwweval/errors.h"
#include "wwweval/report.h"

namespace wwweval::cli {

namespace fs = std::filesystem;

DataLayout::DataLayout(fs::path root) : root_(std::move(root)) {
  entries_ = {
      {"www2.qrels", "www2/qrels.txt"},
      {"www2.runs", "www2/runs"},
      {"www2.variant.good_plus_noise", "www2/variants/good_plus_noise.txt"},
      {"www2.variant.good_plus_corrected", "www2/variants/good_plus_corrected.txt"},
      {"www2.variant.good_plus_null", "www2/variants/good_plus_null.txt"},
      {"www3.qrels", "www3/qrels.txt"},
      {"www3.runs", "www3/runs"},
      {"www3.variant.good_plus_noise", "www3/variants/good_plus_noise.txt"},
      {"www3.variant.good_plus_corrected", "www3/variants/good_plus_corrected.txt"},
      {"www3.variant.good_plus_null", "www3/variants/good_plus_null.txt"},
      {"www4.assessments.gold", "www4/assessments/gold.txt"},
      {"www4.assessments.waseda", "www4/assessments/waseda.txt"},
      {"www4.assessments.tsinghua", "www4/assessments/tsinghua.txt"},
  };
}

void DataLayout::override_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("layout: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("layout must be a JSON object", 0);
  for (const auto &[key, value] : doc.items()) {
    if (!value.is_string())
      throw ParseError("layout entry " + key + " must be a string", 0);
    entries_[key] = value.get<std::string>();
  }
}

fs::path DataLayout::path(const std::string &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw PreconditionError("unknown layout key " + key);
  fs::path p(it->second);
  return p.is_absolute() ? p : root_ / p;
}

bool DataLayout::available(const std::string &key) const {
  std::error_code ec;
  return entries_.count(key) && fs::exists(path(key), ec);
}

DataLayout make_layout(const PaperOptions &opts) {
  DataLayout layout(opts.data_root ? fs::path(*opts.data_root)
                                   : resolve_cache_root(opts.cache_root));
  if (!opts.layout.empty()) layout.override_from_json(read_file(opts.layout));
  return layout;
}

namespace {

using TableFn = std::function<void(const DataLayout &, const PaperOptions &,
                                   std::ostream &)>;

void leaderboards(const DataLayout &d, const PaperOptions &o, std::ostream &out,
                  const std::string &collection,
                  std::vector<std::string> measures) {
  EvalOptions e;
  e.qrels = d.path(collection + ".qrels").string();
  e.runs = {d.path(collection + ".runs").string()};
  e.measures = std::move(measures);
  e.threads = o.threads;
  cmd_eval(e, out);
}

void tukey_tables(const DataLayout &d, const PaperOptions &o, std::ostream &out,
                  const std::string &collection,
                  const std::vector<MeasureKind> &kinds) {
  const Qrels qrels = load_qrels(d.path(collection + ".qrels"));
  const auto runs = load_runs({d.path(collection + ".runs").string()});
  bool first = true;
  for (MeasureKind kind : kinds) {
    Leaderboard board = leaderboard(runs, qrels, kind, MeasureConfig{}, o.threads);
    if (!first) out << "\n";
    first = false;
    out << "# " << measure_name(kind) << "@10\n";
    write_tukey_report(
        randomized_tukey_hsd(board.matrix, o.trials, o.seed, o.threads), 0.05, out);
  }
}

// System-ranking similarity between every pair of measures.
void measure_similarity(const DataLayout &d, const PaperOptions &o,
                        std::ostream &out, const std::string &collection) {
  const Qrels qrels = load_qrels(d.path(collection + ".qrels"));
  const auto runs = load_runs({d.path(collection + ".runs").string()});
  const MeasureKind kinds[] = {MeasureKind::kNdcg, MeasureKind::kQ,
                               MeasureKind::kNerr, MeasureKind::kIrbu};
  std::vector<std::vector<double>> means;
  for (MeasureKind k : kinds)
    means.push_back(leaderboard(runs, qrels, k, MeasureConfig{}, o.threads)
                        .matrix.column_means());
  out << "# kendall tau-b, Fisher z 95% interval, " << runs.size() << " runs\n";
  TsvTable table{{"measure_a", "measure_b", "tau", "ci_low", "ci_high"}, {}, 3};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      TauResult t = kendall_tau_fisher(means[i], means[j]);
      table.rows.push_back({std::string(measure_name(kinds[i])),
                            std::string(measure_name(kinds[j])), t.tau, t.ci_low,
                            t.ci_high});
    }
  out << write_tsv_report(table);
}

void appendix(const DataLayout &d, const PaperOptions &o, std::ostream &out,
              const std::string &collection) {
  CompareRankingsOptions c;
  for (const char *v : {"good_plus_noise", "good_plus_corrected", "good_plus_null"})
    c.variants.push_back(std::string(v) + "=" +
                         d.path(collection + ".variant." + v).string());
  c.runs = {d.path(collection + ".runs").string()};
  c.measures = {"ndcg", "q", "nerr", "irbu"};
  c.seed = o.seed;
  c.threads = o.threads;
  cmd_compare_rankings(c, out);
}

void inter_assessor(const DataLayout &d, const PaperOptions &, std::ostream &out) {
  const char *names[] = {"gold", "waseda", "tsinghua"};
  std::vector<AssessmentSet> sets;
  for (const char *n : names)
    sets.push_back(load_assessments(d.path(std::string("www4.assessments.") + n), n));
  TsvTable table{{"assessor_a", "assessor_b", "mean_kappa"}, {}, 3};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      table.rows.push_back({sets[i].assessor_id, sets[j].assessor_id,
                            mean_per_topic_kappa(sets[i], sets[j])});
  out << write_tsv_report(table);
}

void centre(const DataLayout &d, const PaperOptions &, std::ostream &out,
            bool replicate) {
  const CentreRuns names;
  const fs::path www2_runs = d.path("www2.runs");
  const fs::path www3_runs = d.path("www3.runs");
  // Run files are located by run id, whatever their file names.
  auto locate = [](const fs::path &dir, const std::string &run_id) {
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      if (load_runs({entry.path().string()}).front().run_id == run_id)
        return entry.path().string();
    }
    throw PreconditionError("run " + run_id + " not found in " + dir.string());
  };
  ReproOptions r;
  r.qrels = d.path("www2.qrels").string();
  if (replicate) r.rep_qrels = d.path("www3.qrels").string();
  r.orig_a = locate(www2_runs, names.orig_a);
  r.orig_b = locate(www2_runs, names.orig_b);
  for (const auto &id : names.rep_a) r.rep_a.push_back(locate(www3_runs, id));
  for (const auto &id : names.rep_b) r.rep_b.push_back(locate(www3_runs, id));
  cmd_repro(r, out);
}

const std::vector<std::pair<std::string, TableFn>> &tables() {
  static const std::vector<std::pair<std::string, TableFn>> kTables = {
      {"www2-table1",
       [](const DataLayout &d, const PaperOptions &, std::ostream &out) {
         cmd_stats({d.path("www2.qrels").string()}, out);
       }},
      {"www2-table2",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         leaderboards(d, o, out, "www2", {"ndcg", "q"});
       }},
      {"www2-table3",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         leaderboards(d, o, out, "www2", {"nerr", "irbu"});
       }},
      {"www2-table4",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         tukey_tables(d, o, out, "www2", {MeasureKind::kNdcg, MeasureKind::kQ});
       }},
      {"www2-table5",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         measure_similarity(d, o, out, "www2");
       }},
      {"www3-stats",
       [](const DataLayout &d, const PaperOptions &, std::ostream &out) {
         cmd_stats({d.path("www3.qrels").string()}, out);
       }},
      {"www3-leaderboards",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         leaderboards(d, o, out, "www3", {"ndcg", "q", "nerr", "irbu"});
       }},
      {"www3-tukey",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         tukey_tables(d, o, out, "www3",
                      {MeasureKind::kNdcg, MeasureKind::kQ, MeasureKind::kNerr,
                       MeasureKind::kIrbu});
       }},
      {"www3-similarity",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         measure_similarity(d, o, out, "www3");
       }},
      {"www4-inter-assessor", inter_assessor},
      {"centre-reproducibility",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         centre(d, o, out, false);
       }},
      {"centre-replicability",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         centre(d, o, out, true);
       }},
      {"appendix-www2",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         appendix(d, o, out, "www2");
       }},
      {"appendix-www3",
       [](const DataLayout &d, const PaperOptions &o, std::ostream &out) {
         appendix(d, o, out, "www3");
       }},
  };
  return kTables;
}

}  // namespace

const std::vector<std::string> &paper_tables() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto &[name, fn] : tables()) names.push_back(name);
    return names;
  }();
  return kNames;
}

void run_paper_table(const std::string &name, const PaperOptions &opts,
                     std::ostream &out) {
  for (const auto &[table, fn] : tables()) {
    if (table != name) continue;
    fn(make_layout(opts), opts, out);
    return;
  }
  throw PreconditionError("unknown table " + name);
}

}  // namespace wwweval::cli
