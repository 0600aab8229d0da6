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

#include "wwweval/pooling.h"

#include <algorithm>
#include <map>
#include <set>

#include "wwweval/errors.h"
#include "wwweval/rng.h"

namespace wwweval {

namespace {

struct Candidate {
  std::string doc_id;
  int run_count = 0;
  long rank_sum = 0;
};

std::set<std::string> doc_set(const PoolFile &pool) {
  std::set<std::string> docs;
  for (const auto &e : pool.entries) docs.insert(e.doc_id);
  return docs;
}

// Level per pool rank (index rank-1), validated against the pool size.
std::vector<int> labels_by_rank(const PoolFile &pool,
                                std::span<const RawLabel> raw) {
  const std::size_t n = pool.entries.size();
  std::vector<int> levels(n, -1);
  for (const auto &label : raw) {
    if (label.pool_rank < 1 || static_cast<std::size_t>(label.pool_rank) > n)
      throw PreconditionError("pool rank " + std::to_string(label.pool_rank) +
                              " out of range 1.." + std::to_string(n) +
                              " for topic " + pool.topic_id);
    auto &slot = levels[static_cast<std::size_t>(label.pool_rank - 1)];
    if (slot != -1)
      throw PreconditionError("pool rank " + std::to_string(label.pool_rank) +
                              " labelled twice for topic " + pool.topic_id);
    slot = label.level;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (levels[i] == -1)
      throw PreconditionError("pool rank " + std::to_string(i + 1) +
                              " has no label for topic " + pool.topic_id);
  return levels;
}

void check_same_docs(const PoolFile &pool, const PoolFile &reference) {
  if (pool.topic_id != reference.topic_id)
    throw PreconditionError("pool topics differ: " + pool.topic_id + " vs " +
                            reference.topic_id);
  if (pool.entries.size() != reference.entries.size() ||
      doc_set(pool) != doc_set(reference))
    throw PreconditionError("pool versions for topic " + pool.topic_id +
                            " hold different document sets");
}

}  // namespace

PoolFile build_pool(std::span<const Run> runs, const std::string &topic,
                    const PoolSpec &spec) {
  if (spec.depth < 1) throw PreconditionError("pool depth must be >= 1");

  std::map<std::string, Candidate> candidates;
  bool covered = false;
  for (const auto &run : runs) {
    auto it = run.rankings.find(topic);
    if (it == run.rankings.end()) continue;
    covered = true;
    const auto &docs = it->second;
    const auto depth = std::min<std::size_t>(docs.size(),
                                             static_cast<std::size_t>(spec.depth));
    for (std::size_t i = 0; i < depth; ++i) {
      auto &c = candidates[docs[i].doc_id];
      c.doc_id = docs[i].doc_id;
      ++c.run_count;
      c.rank_sum += static_cast<long>(i + 1);
    }
  }
  if (!covered)
    throw PreconditionError("topic " + topic + " is absent from all runs");

  std::vector<Candidate> ordered;
  ordered.reserve(candidates.size());
  for (auto &[doc, c] : candidates) ordered.push_back(std::move(c));

  if (spec.ordering == PoolOrdering::kPri) {
    std::sort(ordered.begin(), ordered.end(),
              [](const Candidate &a, const Candidate &b) {
                if (a.run_count != b.run_count) return a.run_count > b.run_count;
                if (a.rank_sum != b.rank_sum) return a.rank_sum < b.rank_sum;
                return a.doc_id < b.doc_id;
              });
  } else {
    Rng rng = make_rng(spec.seed);
    shuffle(std::span<Candidate>(ordered), rng);
  }

  PoolFile pool;
  pool.topic_id = topic;
  pool.ordering = spec.ordering;
  pool.seed = spec.ordering == PoolOrdering::kRnd ? spec.seed : 0;
  pool.entries.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    pool.entries.push_back({static_cast<int>(i + 1), ordered[i].doc_id});
  return pool;
}

AssessmentSet join_assessments(const PoolFile &pool,
                               std::span<const RawLabel> raw, JoinMode mode,
                               const PoolFile &reference_pool,
                               std::string assessor_id) {
  check_same_docs(pool, reference_pool);
  const auto levels = labels_by_rank(pool, raw);
  const PoolFile &lookup = mode == JoinMode::kByDocId ? pool : reference_pool;
  AssessmentSet set;
  set.assessor_id = std::move(assessor_id);
  for (std::size_t i = 0; i < levels.size(); ++i)
    set.labels[{pool.topic_id, lookup.entries[i].doc_id}] = levels[i];
  return set;
}

std::vector<LabelDivergence> join_divergence(const PoolFile &pool,
                                             std::span<const RawLabel> raw,
                                             const PoolFile &reference_pool) {
  auto correct = join_assessments(pool, raw, JoinMode::kByDocId, reference_pool);
  auto buggy =
      join_assessments(pool, raw, JoinMode::kByRankBuggy, reference_pool);
  std::vector<LabelDivergence> out;
  for (const auto &e : pool.entries) {
    TopicDoc key{pool.topic_id, e.doc_id};
    int c = correct.labels.at(key);
    int b = buggy.labels.at(key);
    if (c != b) out.push_back({e.doc_id, c, b});
  }
  return out;
}

}  // namespace wwweval
