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

// Significance tests, rank correlation and inter-assessor agreement.

#ifndef WWWEVAL_STATS_H_
#define WWWEVAL_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wwweval/trec_io.h"

namespace wwweval {

class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  bool operator==(const SquareMatrix &) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Two-way ANOVA (topic x system, no replication) residual variance:
// sum (x_ts - row_t - col_s + grand)^2 / ((n-1)(m-1)).
// Throws PreconditionError with fewer than 2 topics or 2 systems.
double residual_variance(const ScoreMatrix &matrix);

struct TukeyResult {
  std::vector<std::string> systems;
  std::vector<double> means;
  // Symmetric, unit diagonal.
  SquareMatrix p_values;
  // mean_i - mean_j.
  SquareMatrix mean_differences;
  double residual_variance = 0.0;
  // |mean_i - mean_j| / sqrt(residual_variance); infinite when the variance
  // is zero and the means differ.
  SquareMatrix effect_sizes;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Randomised Tukey HSD. Each trial permutes the scores within every topic
// row and records max(system mean) - min(system mean); p(i, j) is the share
// of trials whose statistic is >= |mean_i - mean_j|. Ties count as
// exceeding, using a tolerance of 1e-9 * (1 + max |cell|) so that equal
// values summed in a different order still tie.
//
// Trial b draws from make_stream_rng(seed, b), so the result is the same for
// every thread count (threads = 0: all hardware threads).
// Throws PreconditionError if trials == 0 or the matrix has fewer than 2
// topics or 2 systems.
TukeyResult randomized_tukey_hsd(const ScoreMatrix &matrix, std::size_t trials,
                                 std::uint64_t seed, unsigned threads = 1);

struct SignificantPairs {
  std::string winner;
  // Systems the winner beats at level alpha, by descending mean.
  std::vector<std::string> losers;
};

// Rows of "left column significantly outperforms right column", one per
// system with at least one win, ordered by descending mean (ties by name).
std::vector<SignificantPairs> significant_pairs(const TukeyResult &result,
                                                double alpha);

// Two-tailed paired Student t-test. Zero variance of the differences gives
// p = 1 when their mean is zero and p = 0 otherwise.
double paired_ttest(std::span<const double> a, std::span<const double> b);

enum class VarianceModel { kPooled, kWelch };

// Two-tailed two-sample Student t-test. Zero variance in both samples gives
// p = 1 for equal means and p = 0 otherwise.
double unpaired_ttest(std::span<const double> a, std::span<const double> b,
                      VarianceModel model = VarianceModel::kPooled);

// Kendall's tau-b. Throws PreconditionError when n < 2 or when either
// sequence is entirely tied (tau-b is undefined there).
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

struct TauResult {
  double tau = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t resamples = 0;
  std::uint64_t seed = 0;
};

// Fisher z interval for Kendall's tau over n items:
// tanh(atanh(tau) -+ z * sqrt(0.437 / (n - 4))), z the two-sided normal
// quantile for `level`. |tau| = 1 gives the point interval. Throws
// PreconditionError when n <= 4 or level is outside (0, 1).
std::pair<double, double> fisher_z_interval(double tau, std::size_t n,
                                            double level = 0.95);

// tau-b with its Fisher z interval (resamples = 0).
TauResult kendall_tau_fisher(std::span<const double> x,
                             std::span<const double> y);

// tau-b with a 95% percentile-bootstrap interval over items (pairs resampled
// with replacement). Resamples whose tau-b is undefined are dropped. The
// interval is widened to contain tau when the percentiles alone do not.
TauResult kendall_tau(std::span<const double> x, std::span<const double> y,
                      std::size_t resamples = 10000, std::uint64_t seed = 0,
                      unsigned threads = 1);

// Quadratic weighted Cohen's kappa over labels 0..categories-1. When the
// expected disagreement is zero (both raters constant on the same label)
// kappa is 1.
double weighted_kappa(std::span<const int> a, std::span<const int> b,
                      int categories);

// Mean over `topics` of the per-topic weighted kappa (3 categories) between
// two assessors. Both must label the same documents for every topic. An
// empty topic list means every topic `a` labels.
double mean_per_topic_kappa(const AssessmentSet &a, const AssessmentSet &b,
                            std::span<const std::string> topics = {});

}  // namespace wwweval

#endif  // WWWEVAL_STATS_H_
