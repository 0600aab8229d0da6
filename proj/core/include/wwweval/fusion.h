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

// Fusing several assessors' 3-point labels into one graded qrels file.

#ifndef WWWEVAL_FUSION_H_
#define WWWEVAL_FUSION_H_

#include <span>

#include "wwweval/trec_io.h"

namespace wwweval {

enum class FusionScheme {
  // level = S, the sum of raw labels. max_level = 2 * #assessors.
  kSum,
  // level = floor(log2(S + 1)). max_level = floor(log2(2 * #assessors + 1)),
  // i.e. 4 for eight assessors and 3 for four.
  kLog,
};

// All sets must label exactly the same (topic, doc) pairs; a pair labelled
// as L0 by everyone stays in the output as L0. Throws PreconditionError on a
// coverage mismatch or an empty input.
Qrels fuse_sum(std::span<const AssessmentSet> sets);
Qrels fuse_log(std::span<const AssessmentSet> sets);
Qrels fuse(std::span<const AssessmentSet> sets, FusionScheme scheme);

// floor(log2(sum + 1)) for sum >= 0.
int log_fused_level(int sum);

enum class QrelsVariant {
  kGoodPlusNoise,
  kGoodPlusCorrected,
  kGoodPlusNull,
};

// Rebuilds a qrels file from assessment fragments split by provenance:
// `good` sets were unaffected by the join bug, `noisy` are the affected sets
// as originally recorded and `corrected` are the same sets after correction.
//
//   kGoodPlusNoise      fuse(good + noisy)
//   kGoodPlusCorrected  fuse(good + corrected)
//   kGoodPlusNull       fuse(good) -- the affected labels are dropped, which
//                       shrinks the scale (one surviving 3-point assessor
//                       gives L0-L2; four log-fused ones give L0-L3)
//
// Throws PreconditionError if `good` is empty or an assessor id appears in
// `good` and in `noisy` or `corrected`.
Qrels make_variant(std::span<const AssessmentSet> good,
                   std::span<const AssessmentSet> noisy,
                   std::span<const AssessmentSet> corrected,
                   QrelsVariant variant, FusionScheme scheme);

}  // namespace wwweval

#endif  // WWWEVAL_FUSION_H_
