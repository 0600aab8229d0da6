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

// Graded-relevance measures at a cutoff k.
//
// With g(r) the gain of the document at rank r (unjudged documents count as
// L0) and the ideal list made of every judged document sorted by gain:
//
//   nDCG@k  = sum_r g(r) / log2(r + 1), divided by the same sum on the ideal
//             list.
//   Q@k     = 1/min(R, k) * sum_{r<=k, g(r)>0} (C(r) + cg(r)) / (r + cg*(r))
//             where R is the number of relevant documents, C(r) the relevant
//             count in the top r and cg/cg* the cumulative gains of the run
//             and of the ideal list (beta = 1).
//   nERR@k  = ERR@k / ERR*@k, ERR@k = sum_r (1/r) p(r) prod_{i<r}(1 - p(i))
//             with p(r) = g(r) / g_max.
//   iRBU@k  = 1/k * sum_r phi^(r-1) * [level(r) > 0]. Not normalised; its
//             maximum is (1/k) sum_{r<=k} phi^(r-1).
//
// Every measure requires the topic to have at least one document with
// positive gain and throws PreconditionError otherwise.

#ifndef WWWEVAL_MEASURES_H_
#define WWWEVAL_MEASURES_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wwweval/trec_io.h"

namespace wwweval {

class GainMap {
 public:
  // gains[level]; gains[0] must be 0 and the sequence non-decreasing.
  explicit GainMap(std::vector<double> gains);

  // gain(L) = L for L in 0..max_level.
  static GainMap linear(int max_level);

  double gain(int level) const;
  double max_gain() const { return gains_.back(); }
  int max_level() const { return static_cast<int>(gains_.size()) - 1; }

 private:
  std::vector<double> gains_;
};

struct MeasureConfig {
  int cutoff = 10;
  // iRBU persistence, 0 < phi < 1.
  double persistence = 0.99;

  void validate() const;
};

enum class MeasureKind { kNdcg, kQ, kNerr, kIrbu };

std::string_view measure_name(MeasureKind kind);
// Accepts ndcg, q, nerr, irbu (case-insensitive). Throws PreconditionError.
MeasureKind parse_measure(std::string_view name);

double ndcg(std::span<const std::string> ranked, const TopicQrels &judged,
            const GainMap &gains, int cutoff);
double qmeasure(std::span<const std::string> ranked, const TopicQrels &judged,
                const GainMap &gains, int cutoff);
double nerr(std::span<const std::string> ranked, const TopicQrels &judged,
            const GainMap &gains, int cutoff);
double irbu(std::span<const std::string> ranked, const TopicQrels &judged,
            int cutoff, double persistence);

// Pluggable scoring strategy; the statistics code only sees ScoreMatrix
// values, so a different formula can be slotted in here.
class Measure {
 public:
  virtual ~Measure() = default;
  virtual std::string_view name() const = 0;
  virtual double evaluate(std::span<const std::string> ranked,
                          const TopicQrels &judged, const GainMap &gains,
                          const MeasureConfig &config) const = 0;
};

std::unique_ptr<Measure> make_measure(MeasureKind kind);

// cell[t][s] = score of runs[s] on qrels topic t, with topics in qrels order
// and systems in the order given. A run without a ranking for a topic scores
// 0 there. Gains are linear over qrels.max_level.
//
// Throws PreconditionError on an empty run set or a topic without relevant
// documents. threads = 0 uses every hardware thread; results do not depend
// on the thread count.
ScoreMatrix score_matrix(std::span<const Run> runs, const Qrels &qrels,
                         const Measure &measure, const MeasureConfig &config,
                         unsigned threads = 1);

}  // namespace wwweval

#endif  // WWWEVAL_MEASURES_H_
