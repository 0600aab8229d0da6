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

// Domain types for runs, qrels, pools, assessments and score matrices, and
// their whitespace-delimited text formats:
//
//   run         topic Q0 docid rank score tag
//   qrels       topic 0 docid level        (level written L2 or 2)
//   pool        topic pool_rank docid      (optional "# seed=<n> ordering=<PRI|RND>")
//   assessment  topic docid level          (one assessor per file, levels 0..2)
//   raw labels  topic pool_rank level      (labels keyed by pool position)
//
// Input may use CRLF line endings; output always uses LF.

#ifndef WWWEVAL_TREC_IO_H_
#define WWWEVAL_TREC_IO_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wwweval {

struct RankedDoc {
  std::string doc_id;
  int rank = 0;
  double score = 0.0;

  bool operator==(const RankedDoc &) const = default;
};

// A system's submission. Within each topic the documents are stored by
// ascending rank, and ranks are 1..n: the parser re-derives them from the
// scores (score descending, ties broken by doc_id descending).
struct Run {
  std::string run_id;
  std::map<std::string, std::vector<RankedDoc>> rankings;

  // Ranked doc ids for `topic`; empty when the run does not cover it.
  std::vector<std::string> doc_ids(const std::string &topic) const;

  bool operator==(const Run &) const = default;
};

using TopicQrels = std::map<std::string, int>;

struct Qrels {
  std::map<std::string, TopicQrels> labels;
  // Top of the relevance scale: 2 for raw 3-point labels, 4 for fused files.
  int max_level = 0;

  // nullptr when the topic has no judgements.
  const TopicQrels *topic(const std::string &topic_id) const;
  // Number of (topic, doc) pairs.
  std::size_t size() const;

  bool operator==(const Qrels &) const = default;
};

enum class PoolOrdering { kPri, kRnd };

std::string_view to_string(PoolOrdering ordering);
PoolOrdering parse_pool_ordering(std::string_view text);

struct PoolEntry {
  int pool_rank = 0;
  std::string doc_id;

  bool operator==(const PoolEntry &) const = default;
};

// One topic's pool as shown to an assessor. pool_rank runs 1..n.
struct PoolFile {
  std::string topic_id;
  PoolOrdering ordering = PoolOrdering::kPri;
  std::uint64_t seed = 0;
  std::vector<PoolEntry> entries;

  bool operator==(const PoolFile &) const = default;
};

using TopicDoc = std::pair<std::string, std::string>;

// One assessor's raw 3-point labels.
struct AssessmentSet {
  std::string assessor_id;
  std::map<TopicDoc, int> labels;

  bool operator==(const AssessmentSet &) const = default;
};

// A label as the assessment interface records it: keyed by pool position.
struct RawLabel {
  int pool_rank = 0;
  int level = 0;
};

// Topics x systems matrix of per-topic scores, stored row-major.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  // Throws PreconditionError on size mismatch, duplicate labels or
  // non-finite cells.
  ScoreMatrix(std::vector<std::string> topics, std::vector<std::string> systems,
              std::vector<double> cells);

  const std::vector<std::string> &topics() const { return topics_; }
  const std::vector<std::string> &systems() const { return systems_; }
  std::size_t num_topics() const { return topics_.size(); }
  std::size_t num_systems() const { return systems_.size(); }

  double at(std::size_t topic, std::size_t system) const {
    return cells_[topic * systems_.size() + system];
  }
  const std::vector<double> &cells() const { return cells_; }

  std::vector<double> column(std::size_t system) const;
  double column_mean(std::size_t system) const;
  std::vector<double> column_means() const;
  // Throws PreconditionError for an unknown name.
  std::size_t system_index(std::string_view name) const;

  bool operator==(const ScoreMatrix &) const = default;

 private:
  std::vector<std::string> topics_;
  std::vector<std::string> systems_;
  std::vector<double> cells_;
};

Run parse_run(std::string_view text);
std::string serialize_run(const Run &run);

// Column positions for qrels files whose layout differs from the default
// four-column `topic 0 docid level`.
struct QrelsLayout {
  std::size_t num_fields = 4;
  std::size_t topic_field = 0;
  std::size_t doc_field = 2;
  std::size_t level_field = 3;
};

// max_level of the result is the largest level observed (0 when empty).
Qrels parse_qrels(std::string_view text, const QrelsLayout &layout = {});
std::string serialize_qrels(const Qrels &qrels);

// Accepts "L3" or "3". Returns -1 on anything else.
int parse_level(std::string_view field);

PoolFile parse_pool(std::string_view text);
std::string serialize_pool(const PoolFile &pool);

AssessmentSet parse_assessments(std::string_view text, std::string assessor_id);
std::string serialize_assessments(const AssessmentSet &set);

std::map<std::string, std::vector<RawLabel>> parse_raw_labels(
    std::string_view text);

// TSV: header "topic<TAB>system...", one row per topic, 6-decimal cells.
ScoreMatrix parse_score_matrix(std::string_view text);
std::string serialize_score_matrix(const ScoreMatrix &matrix);

struct LevelStats {
  // Every level 0..max_level is present, possibly with a zero count.
  std::map<int, std::size_t> counts;
  std::size_t total = 0;
};

LevelStats qrels_stats(const Qrels &qrels);

}  // namespace wwweval

#endif  // WWWEVAL_TREC_IO_H_
