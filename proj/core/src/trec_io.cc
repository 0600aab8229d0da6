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

#include "wwweval/trec_io.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "text_util.h"
#include "wwweval/errors.h"
#include "wwweval/report.h"

namespace wwweval {

namespace internal {

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::string shortest_repr(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace internal

using internal::for_each_line;
using internal::is_blank;
using internal::parse_double;
using internal::parse_int;
using internal::split_fields;

std::vector<std::string> Run::doc_ids(const std::string &topic) const {
  std::vector<std::string> ids;
  auto it = rankings.find(topic);
  if (it == rankings.end()) return ids;
  ids.reserve(it->second.size());
  for (const auto &doc : it->second) ids.push_back(doc.doc_id);
  return ids;
}

const TopicQrels *Qrels::topic(const std::string &topic_id) const {
  auto it = labels.find(topic_id);
  return it == labels.end() ? nullptr : &it->second;
}

std::size_t Qrels::size() const {
  std::size_t n = 0;
  for (const auto &[topic, docs] : labels) n += docs.size();
  return n;
}

std::string_view to_string(PoolOrdering ordering) {
  return ordering == PoolOrdering::kPri ? "PRI" : "RND";
}

PoolOrdering parse_pool_ordering(std::string_view text) {
  if (text == "PRI" || text == "pri") return PoolOrdering::kPri;
  if (text == "RND" || text == "rnd") return PoolOrdering::kRnd;
  throw ParseError("unknown pool ordering '" + std::string(text) + "'", 0);
}

ScoreMatrix::ScoreMatrix(std::vector<std::string> topics,
                         std::vector<std::string> systems,
                         std::vector<double> cells)
    : topics_(std::move(topics)),
      systems_(std::move(systems)),
      cells_(std::move(cells)) {
  if (cells_.size() != topics_.size() * systems_.size())
    throw PreconditionError("score matrix: cell count does not match " +
                            std::to_string(topics_.size()) + " x " +
                            std::to_string(systems_.size()));
  if (std::set<std::string>(topics_.begin(), topics_.end()).size() !=
      topics_.size())
    throw PreconditionError("score matrix: duplicate topic label");
  if (std::set<std::string>(systems_.begin(), systems_.end()).size() !=
      systems_.size())
    throw PreconditionError("score matrix: duplicate system label");
  for (double c : cells_)
    if (!std::isfinite(c))
      throw PreconditionError("score matrix: non-finite cell");
}

std::vector<double> ScoreMatrix::column(std::size_t system) const {
  std::vector<double> out(topics_.size());
  for (std::size_t t = 0; t < topics_.size(); ++t) out[t] = at(t, system);
  return out;
}

double ScoreMatrix::column_mean(std::size_t system) const {
  if (topics_.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t t = 0; t < topics_.size(); ++t) sum += at(t, system);
  return sum / static_cast<double>(topics_.size());
}

std::vector<double> ScoreMatrix::column_means() const {
  std::vector<double> means(systems_.size());
  for (std::size_t s = 0; s < systems_.size(); ++s) means[s] = column_mean(s);
  return means;
}

std::size_t ScoreMatrix::system_index(std::string_view name) const {
  auto it = std::find(systems_.begin(), systems_.end(), name);
  if (it == systems_.end())
    throw PreconditionError("unknown system '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - systems_.begin());
}

Run parse_run(std::string_view text) {
  Run run;
  bool have_tag = false;
  std::map<std::string, std::set<std::string>> seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_blank(line)) return;
    auto f = split_fields(line);
    if (f.size() != 6)
      throw ParseError("malformed run line: expected 6 fields, got " +
                           std::to_string(f.size()),
                       line_no);
    auto rank = parse_int<int>(f[3]);
    if (!rank || *rank < 0)
      throw ParseError("malformed rank '" + std::string(f[3]) + "'", line_no);
    auto score = parse_double(f[4]);
    if (!score)
      throw ParseError("malformed score '" + std::string(f[4]) + "'", line_no);
    if (!have_tag) {
      run.run_id = std::string(f[5]);
      have_tag = true;
    } else if (f[5] != run.run_id) {
      throw ParseError("inconsistent run tag '" + std::string(f[5]) +
                           "' (expected '" + run.run_id + "')",
                       line_no);
    }
    std::string topic(f[0]);
    std::string doc(f[2]);
    if (!seen[topic].insert(doc).second)
      throw ParseError("duplicate document '" + doc + "' in topic " + topic,
                       line_no);
    run.rankings[topic].push_back({std::move(doc), *rank, *score});
  });
  for (auto &[topic, docs] : run.rankings) {
    std::sort(docs.begin(), docs.end(),
              [](const RankedDoc &a, const RankedDoc &b) {
                if (a.score != b.score) return a.score > b.score;
                return a.doc_id > b.doc_id;
              });
    for (std::size_t i = 0; i < docs.size(); ++i)
      docs[i].rank = static_cast<int>(i + 1);
  }
  return run;
}

std::string serialize_run(const Run &run) {
  std::string out;
  for (const auto &[topic, docs] : run.rankings) {
    for (const auto &doc : docs) {
      out += topic;
      out += " Q0 ";
      out += doc.doc_id;
      out += ' ';
      out += std::to_string(doc.rank);
      out += ' ';
      out += internal::shortest_repr(doc.score);
      out += ' ';
      out += run.run_id;
      out += '\n';
    }
  }
  return out;
}

int parse_level(std::string_view field) {
  if (!field.empty() && (field.front() == 'L' || field.front() == 'l'))
    field.remove_prefix(1);
  auto level = parse_int<int>(field);
  if (!level || *level < 0) return -1;
  return *level;
}

Qrels parse_qrels(std::string_view text, const QrelsLayout &layout) {
  Qrels qrels;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_blank(line)) return;
    auto f = split_fields(line);
    if (f.size() != layout.num_fields)
      throw ParseError("malformed qrels line: expected " +
                           std::to_string(layout.num_fields) + " fields, got " +
                           std::to_string(f.size()),
                       line_no);
    int level = parse_level(f[layout.level_field]);
    if (level < 0)
      throw ParseError("invalid relevance level '" +
                           std::string(f[layout.level_field]) + "'",
                       line_no);
    std::string topic(f[layout.topic_field]);
    std::string doc(f[layout.doc_field]);
    auto [it, inserted] = qrels.labels[topic].emplace(doc, level);
    if (!inserted)
      throw ParseError("duplicate judgement for (" + topic + ", " + doc + ")",
                       line_no);
    qrels.max_level = std::max(qrels.max_level, level);
  });
  return qrels;
}

std::string serialize_qrels(const Qrels &qrels) {
  std::string out;
  for (const auto &[topic, docs] : qrels.labels)
    for (const auto &[doc, level] : docs)
      out += topic + " 0 " + doc + " L" + std::to_string(level) + "\n";
  return out;
}

namespace {

void parse_pool_header(std::string_view line, std::size_t line_no,
                       PoolFile &pool) {
  line.remove_prefix(1);
  for (auto token : split_fields(line)) {
    auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;
    auto key = token.substr(0, eq);
    auto value = token.substr(eq + 1);
    if (key == "seed") {
      auto seed = parse_int<std::uint64_t>(value);
      if (!seed)
        throw ParseError("invalid seed '" + std::string(value) + "'", line_no);
      pool.seed = *seed;
    } else if (key == "ordering") {
      try {
        pool.ordering = parse_pool_ordering(value);
      } catch (const ParseError &e) {
        throw ParseError(e.what(), line_no);
      }
    }
  }
}

}  // namespace

PoolFile parse_pool(std::string_view text) {
  PoolFile pool;
  bool have_topic = false;
  std::set<std::string> docs;
  std::vector<std::pair<PoolEntry, std::size_t>> entries;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_blank(line)) return;
    if (line.front() == '#') {
      parse_pool_header(line, line_no, pool);
      return;
    }
    auto f = split_fields(line);
    if (f.size() != 3)
      throw ParseError("malformed pool line: expected 3 fields, got " +
                           std::to_string(f.size()),
                       line_no);
    if (!have_topic) {
      pool.topic_id = std::string(f[0]);
      have_topic = true;
    } else if (f[0] != pool.topic_id) {
      throw ParseError("pool file mixes topics " + pool.topic_id + " and " +
                           std::string(f[0]),
                       line_no);
    }
    auto rank = parse_int<int>(f[1]);
    if (!rank || *rank < 1)
      throw ParseError("invalid pool rank '" + std::string(f[1]) + "'",
                       line_no);
    std::string doc(f[2]);
    if (!docs.insert(doc).second)
      throw ParseError("duplicate document '" + doc + "' in pool", line_no);
    entries.push_back({{*rank, std::move(doc)}, line_no});
  });
  std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    return a.first.pool_rank < b.first.pool_rank;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first.pool_rank != static_cast<int>(i + 1))
      throw ParseError("pool ranks are not contiguous 1.." +
                           std::to_string(entries.size()),
                       entries[i].second);
    pool.entries.push_back(std::move(entries[i].first));
  }
  return pool;
}

std::string serialize_pool(const PoolFile &pool) {
  std::string out = "# seed=" + std::to_string(pool.seed) +
                    " ordering=" + std::string(to_string(pool.ordering)) + "\n";
  for (const auto &e : pool.entries)
    out += pool.topic_id + " " + std::to_string(e.pool_rank) + " " + e.doc_id +
           "\n";
  return out;
}

AssessmentSet parse_assessments(std::string_view text,
                                std::string assessor_id) {
  AssessmentSet set;
  set.assessor_id = std::move(assessor_id);
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_blank(line) || line.front() == '#') return;
    auto f = split_fields(line);
    if (f.size() != 3)
      throw ParseError("malformed assessment line: expected 3 fields, got " +
                           std::to_string(f.size()),
                       line_no);
    int level = parse_level(f[2]);
    if (level < 0 || level > 2)
      throw ParseError("raw level must be 0, 1 or 2, got '" +
                           std::string(f[2]) + "'",
                       line_no);
    TopicDoc key{std::string(f[0]), std::string(f[1])};
    if (!set.labels.emplace(key, level).second)
      throw ParseError("duplicate assessment for (" + key.first + ", " +
                           key.second + ")",
                       line_no);
  });
  return set;
}

std::string serialize_assessments(const AssessmentSet &set) {
  std::string out;
  for (const auto &[key, level] : set.labels)
    out += key.first + " " + key.second + " " + std::to_string(level) + "\n";
  return out;
}

std::map<std::string, std::vector<RawLabel>> parse_raw_labels(
    std::string_view text) {
  std::map<std::string, std::vector<RawLabel>> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_blank(line) || line.front() == '#') return;
    auto f = split_fields(line);
    if (f.size() != 3)
      throw ParseError("malformed label line: expected 3 fields, got " +
                           std::to_string(f.size()),
                       line_no);
    auto rank = parse_int<int>(f[1]);
    int level = parse_level(f[2]);
    if (!rank || *rank < 1)
      throw ParseError("invalid pool rank '" + std::string(f[1]) + "'",
                       line_no);
    if (level < 0 || level > 2)
      throw ParseError("raw level must be 0, 1 or 2, got '" +
                           std::string(f[2]) + "'",
                       line_no);
    out[std::string(f[0])].push_back({*rank, level});
  });
  return out;
}

ScoreMatrix parse_score_matrix(std::string_view text) {
  std::vector<std::string> systems;
  std::vector<std::string> topics;
  std::vector<double> cells;
  bool have_header = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_blank(line) || line.front() == '#') return;
    auto f = split_fields(line);
    if (!have_header) {
      if (f.size() < 2)
        throw ParseError("matrix header needs at least one system", line_no);
      for (std::size_t i = 1; i < f.size(); ++i) systems.emplace_back(f[i]);
      have_header = true;
      return;
    }
    if (f.size() != systems.size() + 1)
      throw ParseError("matrix row has " + std::to_string(f.size() - 1) +
                           " cells, expected " + std::to_string(systems.size()),
                       line_no);
    topics.emplace_back(f[0]);
    for (std::size_t i = 1; i < f.size(); ++i) {
      auto v = parse_double(f[i]);
      if (!v)
        throw ParseError("malformed cell '" + std::string(f[i]) + "'",
                         line_no);
      cells.push_back(*v);
    }
  });
  if (!have_header) throw ParseError("empty score matrix", 0);
  try {
    return ScoreMatrix(std::move(topics), std::move(systems), std::move(cells));
  } catch (const PreconditionError &e) {
    throw ParseError(e.what(), 0);
  }
}

std::string serialize_score_matrix(const ScoreMatrix &matrix) {
  std::string out = "topic";
  for (const auto &s : matrix.systems()) out += "\t" + s;
  out += '\n';
  for (std::size_t t = 0; t < matrix.num_topics(); ++t) {
    out += matrix.topics()[t];
    for (std::size_t s = 0; s < matrix.num_systems(); ++s)
      out += "\t" + format_fixed(matrix.at(t, s), 6);
    out += '\n';
  }
  return out;
}

LevelStats qrels_stats(const Qrels &qrels) {
  LevelStats stats;
  for (int level = 0; level <= qrels.max_level; ++level)
    stats.counts[level] = 0;
  for (const auto &[topic, docs] : qrels.labels)
    for (const auto &[doc, level] : docs) {
      ++stats.counts[level];
      ++stats.total;
    }
  return stats;
}

}  // namespace wwweval
