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

// Depth-k pooling and the join of pool-position labels back to documents.

#ifndef WWWEVAL_POOLING_H_
#define WWWEVAL_POOLING_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wwweval/trec_io.h"

namespace wwweval {

struct PoolSpec {
  int depth = 50;
  PoolOrdering ordering = PoolOrdering::kPri;
  // Only used for RND pools.
  std::uint64_t seed = 0;
};

// Union of every run's top-`depth` documents for `topic`.
//
// PRI orders the union by (number of runs retrieving the doc within depth,
// descending; sum of those ranks, ascending; doc_id ascending). RND applies a
// seeded Fisher-Yates shuffle (see rng.h) to the union in doc_id order.
//
// Throws PreconditionError if depth < 1 or no run covers the topic.
PoolFile build_pool(std::span<const Run> runs, const std::string &topic,
                    const PoolSpec &spec);

enum class JoinMode {
  // Label at pool position r belongs to pool.entries[r].doc_id.
  kByDocId,
  // Label at pool position r is attached to reference_pool.entries[r]: the
  // (topic, rank) -> doc lookup that ignores which pool version the assessor
  // actually saw.
  kByRankBuggy,
};

// `raw` must cover every rank of `pool` exactly once. `reference_pool` must
// hold the same topic and doc set as `pool`.
AssessmentSet join_assessments(const PoolFile &pool,
                               std::span<const RawLabel> raw, JoinMode mode,
                               const PoolFile &reference_pool,
                               std::string assessor_id = {});

struct LabelDivergence {
  std::string doc_id;
  int correct_level = 0;
  int buggy_level = 0;
};

// Documents whose label differs between the kByDocId and kByRankBuggy joins,
// in pool order of `pool`.
std::vector<LabelDivergence> join_divergence(const PoolFile &pool,
                                             std::span<const RawLabel> raw,
                                             const PoolFile &reference_pool);

}  // namespace wwweval

#endif  // WWWEVAL_POOLING_H_
