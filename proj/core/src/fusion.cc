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

#include "wwweval/fusion.h"

#include <bit>
#include <set>
#include <string>
#include <vector>

#include "wwweval/errors.h"

namespace wwweval {

namespace {

// Sum of raw labels per (topic, doc), after checking every set covers the
// same pairs.
std::map<TopicDoc, int> summed_labels(std::span<const AssessmentSet> sets) {
  if (sets.empty()) throw PreconditionError("fusion needs at least one set");
  std::map<TopicDoc, int> sums;
  for (const auto &[key, level] : sets[0].labels) sums[key] = level;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    const auto &labels = sets[i].labels;
    if (labels.size() != sums.size())
      throw PreconditionError("assessor '" + sets[i].assessor_id +
                              "' covers " + std::to_string(labels.size()) +
                              " pairs, expected " +
                              std::to_string(sums.size()));
    for (const auto &[key, level] : labels) {
      auto it = sums.find(key);
      if (it == sums.end())
        throw PreconditionError("(" + key.first + ", " + key.second +
                                ") is labelled by '" + sets[i].assessor_id +
                                "' but not by '" + sets[0].assessor_id + "'");
      it->second += level;
    }
  }
  return sums;
}

}  // namespace

int log_fused_level(int sum) {
  return std::bit_width(static_cast<unsigned>(sum) + 1u) - 1;
}

Qrels fuse_sum(std::span<const AssessmentSet> sets) {
  Qrels qrels;
  for (const auto &[key, sum] : summed_labels(sets))
    qrels.labels[key.first][key.second] = sum;
  qrels.max_level = 2 * static_cast<int>(sets.size());
  return qrels;
}

Qrels fuse_log(std::span<const AssessmentSet> sets) {
  Qrels qrels;
  for (const auto &[key, sum] : summed_labels(sets))
    qrels.labels[key.first][key.second] = log_fused_level(sum);
  qrels.max_level = log_fused_level(2 * static_cast<int>(sets.size()));
  return qrels;
}

Qrels fuse(std::span<const AssessmentSet> sets, FusionScheme scheme) {
  return scheme == FusionScheme::kSum ? fuse_sum(sets) : fuse_log(sets);
}

Qrels make_variant(std::span<const AssessmentSet> good,
                   std::span<const AssessmentSet> noisy,
                   std::span<const AssessmentSet> corrected,
                   QrelsVariant variant, FusionScheme scheme) {
  if (good.empty()) throw PreconditionError("empty good fragment");
  std::set<std::string> good_ids;
  for (const auto &s : good) good_ids.insert(s.assessor_id);
  auto check_disjoint = [&](std::span<const AssessmentSet> other,
                            const char *name) {
    for (const auto &s : other)
      if (good_ids.count(s.assessor_id))
        throw PreconditionError("assessor '" + s.assessor_id +
                                "' appears in both the good and " + name +
                                " fragments");
  };
  check_disjoint(noisy, "noisy");
  check_disjoint(corrected, "corrected");

  std::vector<AssessmentSet> merged(good.begin(), good.end());
  switch (variant) {
    case QrelsVariant::kGoodPlusNoise:
      merged.insert(merged.end(), noisy.begin(), noisy.end());
      break;
    case QrelsVariant::kGoodPlusCorrected:
      merged.insert(merged.end(), corrected.begin(), corrected.end());
      break;
    case QrelsVariant::kGoodPlusNull:
      break;
  }
  return fuse(merged, scheme);
}

}  // namespace wwweval
