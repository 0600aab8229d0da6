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

// Measures comparing an original run pair (advanced A, baseline B) with a
// reproduced or replicated pair.

#ifndef WWWEVAL_REPRO_H_
#define WWWEVAL_REPRO_H_

#include <span>
#include <string>
#include <vector>

namespace wwweval {

// sqrt(mean_t (orig_t - rep_t)^2). Throws PreconditionError on a length
// mismatch or empty input.
double rmse_abs(std::span<const double> orig, std::span<const double> rep);

// rmse_abs over the per-topic deltas a_t - b_t.
double rmse_delta(std::span<const double> orig_a, std::span<const double> orig_b,
                  std::span<const double> rep_a, std::span<const double> rep_b);

// (mean rep_a - mean rep_b) / (mean orig_a - mean orig_b). The rep vectors
// may cover a different topic set from the orig ones. Throws
// PreconditionError when the original effect is zero.
double effect_ratio(std::span<const double> orig_a, std::span<const double> orig_b,
                    std::span<const double> rep_a, std::span<const double> rep_b);

// RI_orig - RI_rep with RI = (mean_a - mean_b) / mean_b. Throws
// PreconditionError on a zero baseline mean.
double delta_ri(std::span<const double> orig_a, std::span<const double> orig_b,
                std::span<const double> rep_a, std::span<const double> rep_b);

// Kendall's tau union: tau-b between the rank vectors of the union of the
// two top-k lists. A document missing from one list is placed below that
// list's cutoff, in the order it appears in the other list.
double kendall_tau_union(std::span<const std::string> orig,
                         std::span<const std::string> rep, int cutoff);

// Extrapolated rank-biased overlap to depth D = max(|orig|, |rep|):
// (1-p)/p * sum_{d<=D} (X_d/d) p^d + (X_D/D) p^D, X_d = |top-d overlap|.
double rbo(std::span<const std::string> orig, std::span<const std::string> rep,
           double persistence = 0.8);

// One run pair's per-topic scores.
struct RunPairScores {
  std::vector<std::string> topics;
  std::vector<double> a;
  std::vector<double> b;
};

// Original and reproduced pairs over the identical topic sequence; the only
// input that admits the RMSE measures.
class Reproduction {
 public:
  // Throws PreconditionError unless all four vectors align to one topic list.
  Reproduction(RunPairScores orig, RunPairScores rep);

  double rmse_abs_a() const;
  double rmse_abs_b() const;
  double rmse_delta() const;
  double effect_ratio() const;
  double delta_ri() const;

  const RunPairScores &orig() const { return orig_; }
  const RunPairScores &rep() const { return rep_; }

 private:
  RunPairScores orig_;
  RunPairScores rep_;
};

// Original and replicated pairs over different topic sets; RMSE is not
// defined here.
class Replication {
 public:
  Replication(RunPairScores orig, RunPairScores rep);

  double effect_ratio() const;
  double delta_ri() const;

  const RunPairScores &orig() const { return orig_; }
  const RunPairScores &rep() const { return rep_; }

 private:
  RunPairScores orig_;
  RunPairScores rep_;
};

}  // namespace wwweval

#endif  // WWWEVAL_REPRO_H_
