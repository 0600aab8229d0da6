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

#include "wwweval/stats.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "wwweval/errors.h"
#include "wwweval/parallel.h"
#include "wwweval/rng.h"

namespace wwweval {

namespace {

double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

// Unbiased sample variance.
double variance(std::span<const double> x, double mu) {
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return ss / static_cast<double>(x.size() - 1);
}

double two_tailed_t(double t, double df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

void check_dims(const ScoreMatrix &m) {
  if (m.num_topics() < 2 || m.num_systems() < 2)
    throw PreconditionError("need at least 2 topics and 2 systems, got " +
                            std::to_string(m.num_topics()) + " x " +
                            std::to_string(m.num_systems()));
}

}  // namespace

double residual_variance(const ScoreMatrix &matrix) {
  check_dims(matrix);
  const std::size_t n = matrix.num_topics();
  const std::size_t m = matrix.num_systems();
  std::vector<double> row(n, 0.0);
  std::vector<double> col(m, 0.0);
  double grand = 0.0;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < m; ++s) {
      row[t] += matrix.at(t, s);
      col[s] += matrix.at(t, s);
      grand += matrix.at(t, s);
    }
  for (auto &r : row) r /= static_cast<double>(m);
  for (auto &c : col) c /= static_cast<double>(n);
  grand /= static_cast<double>(n * m);
  double ss = 0.0;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < m; ++s) {
      double r = matrix.at(t, s) - row[t] - col[s] + grand;
      ss += r * r;
    }
  return ss / static_cast<double>((n - 1) * (m - 1));
}

TukeyResult randomized_tukey_hsd(const ScoreMatrix &matrix, std::size_t trials,
                                 std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw PreconditionError("number of trials must be >= 1");
  check_dims(matrix);
  const std::size_t n = matrix.num_topics();
  const std::size_t m = matrix.num_systems();

  TukeyResult result;
  result.systems = matrix.systems();
  result.means = matrix.column_means();
  result.trials = trials;
  result.seed = seed;
  result.residual_variance = residual_variance(matrix);

  // Rows are shuffled from value order, not column order, so a trial only
  // sees each row's multiset and relabelling systems cannot change it.
  std::vector<double> sorted_rows(matrix.cells());
  for (std::size_t t = 0; t < n; ++t)
    std::sort(sorted_rows.begin() + static_cast<std::ptrdiff_t>(t * m),
              sorted_rows.begin() + static_cast<std::ptrdiff_t>((t + 1) * m));

  std::vector<double> stats(trials);
  parallel_for(trials, threads, [&](std::size_t b) {
    Rng rng = make_stream_rng(seed, b);
    std::vector<double> sums(m, 0.0);
    std::vector<double> row(m);
    for (std::size_t t = 0; t < n; ++t) {
      std::copy_n(sorted_rows.begin() + static_cast<std::ptrdiff_t>(t * m), m,
                  row.begin());
      shuffle(std::span<double>(row), rng);
      for (std::size_t s = 0; s < m; ++s) sums[s] += row[s];
    }
    auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    stats[b] = (*hi - *lo) / static_cast<double>(n);
  });
  std::sort(stats.begin(), stats.end());

  double scale = 0.0;
  for (double c : matrix.cells()) scale = std::max(scale, std::fabs(c));
  const double tolerance = 1e-9 * (1.0 + scale);
  const double sd = std::sqrt(result.residual_variance);

  result.p_values = SquareMatrix(m, 1.0);
  result.mean_differences = SquareMatrix(m, 0.0);
  result.effect_sizes = SquareMatrix(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double diff = result.means[i] - result.means[j];
      result.mean_differences(i, j) = diff;
      if (i == j) continue;
      const double threshold = std::fabs(diff) - tolerance;
      auto first = std::lower_bound(stats.begin(), stats.end(), threshold);
      result.p_values(i, j) = static_cast<double>(stats.end() - first) /
                              static_cast<double>(trials);
      if (sd > 0.0)
        result.effect_sizes(i, j) = std::fabs(diff) / sd;
      else
        result.effect_sizes(i, j) =
            diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
  return result;
}

std::vector<SignificantPairs> significant_pairs(const TukeyResult &result,
                                                double alpha) {
  const std::size_t m = result.systems.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.means[a] != result.means[b])
      return result.means[a] > result.means[b];
    return result.systems[a] < result.systems[b];
  });
  std::vector<SignificantPairs> rows;
  for (std::size_t i : order) {
    SignificantPairs row{result.systems[i], {}};
    for (std::size_t j : order)
      if (j != i && result.means[i] > result.means[j] &&
          result.p_values(i, j) < alpha)
        row.losers.push_back(result.systems[j]);
    if (!row.losers.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

double paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw PreconditionError("paired t-test needs equal-length samples");
  if (a.size() < 2)
    throw PreconditionError("paired t-test needs at least 2 pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double mu = mean(d);
  const double var = variance(d, mu);
  if (var == 0.0) return mu == 0.0 ? 1.0 : 0.0;
  const double t = mu / std::sqrt(var / static_cast<double>(d.size()));
  return two_tailed_t(t, static_cast<double>(d.size() - 1));
}

double unpaired_ttest(std::span<const double> a, std::span<const double> b,
                      VarianceModel model) {
  if (a.size() < 2 || b.size() < 2)
    throw PreconditionError("unpaired t-test needs at least 2 values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  const double va = variance(a, ma);
  const double vb = variance(b, mb);
  if (va == 0.0 && vb == 0.0) return ma == mb ? 1.0 : 0.0;
  double t = 0.0;
  double df = 0.0;
  if (model == VarianceModel::kPooled) {
    const double pooled = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2);
    t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    df = na + nb - 2;
  } else {
    const double sa = va / na;
    const double sb = vb / nb;
    t = (ma - mb) / std::sqrt(sa + sb);
    df = (sa + sb) * (sa + sb) /
         (sa * sa / (na - 1) + sb * sb / (nb - 1));
  }
  return two_tailed_t(t, df);
}

namespace {

// NaN when undefined (one side entirely tied).
double tau_b_or_nan(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long long concordant_minus_discordant = 0;
  long long untied_x = 0;
  long long untied_y = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx != 0.0) ++untied_x;
      if (dy != 0.0) ++untied_y;
      if (dx != 0.0 && dy != 0.0)
        concordant_minus_discordant += (dx > 0) == (dy > 0) ? 1 : -1;
    }
  if (untied_x == 0 || untied_y == 0)
    return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(concordant_minus_discordant) /
         std::sqrt(static_cast<double>(untied_x) *
                   static_cast<double>(untied_y));
}

// Linear-interpolation sample quantile of sorted data.
double quantile(const std::vector<double> &sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw PreconditionError("kendall tau needs paired sequences");
  if (x.size() < 2) throw PreconditionError("kendall tau needs n >= 2");
  const double tau = tau_b_or_nan(x, y);
  if (std::isnan(tau))
    throw PreconditionError("kendall tau-b undefined: a ranking is fully tied");
  return tau;
}

std::pair<double, double> fisher_z_interval(double tau, std::size_t n,
                                            double level) {
  if (n <= 4) throw PreconditionError("Fisher z interval needs n > 4");
  if (!(level > 0.0 && level < 1.0))
    throw PreconditionError("confidence level must lie in (0, 1)");
  if (std::fabs(tau) >= 1.0) return {tau, tau};
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + level / 2);
  const double half = z * std::sqrt(0.437 / static_cast<double>(n - 4));
  const double centre = std::atanh(tau);
  return {std::tanh(centre - half), std::tanh(centre + half)};
}

TauResult kendall_tau_fisher(std::span<const double> x,
                             std::span<const double> y) {
  TauResult result;
  result.tau = kendall_tau_b(x, y);
  std::tie(result.ci_low, result.ci_high) = fisher_z_interval(result.tau, x.size());
  return result;
}

TauResult kendall_tau(std::span<const double> x, std::span<const double> y,
                      std::size_t resamples, std::uint64_t seed,
                      unsigned threads) {
  TauResult result;
  result.tau = kendall_tau_b(x, y);
  result.resamples = resamples;
  result.seed = seed;
  result.ci_low = result.ci_high = result.tau;
  if (resamples == 0) return result;

  const std::size_t n = x.size();
  std::vector<double> taus(resamples);
  parallel_for(resamples, threads, [&](std::size_t r) {
    Rng rng = make_stream_rng(seed, r);
    std::vector<double> bx(n);
    std::vector<double> by(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto k = static_cast<std::size_t>(uniform_below(rng, n));
      bx[i] = x[k];
      by[i] = y[k];
    }
    taus[r] = tau_b_or_nan(bx, by);
  });
  std::erase_if(taus, [](double t) { return std::isnan(t); });
  if (taus.empty()) return result;
  std::sort(taus.begin(), taus.end());
  result.ci_low = std::min(quantile(taus, 0.025), result.tau);
  result.ci_high = std::max(quantile(taus, 0.975), result.tau);
  return result;
}

double weighted_kappa(std::span<const int> a, std::span<const int> b,
                      int categories) {
  if (a.size() != b.size())
    throw PreconditionError("kappa needs equal-length label sequences");
  if (a.empty()) throw PreconditionError("kappa needs at least one item");
  if (categories < 2) throw PreconditionError("kappa needs >= 2 categories");
  const auto c = static_cast<std::size_t>(categories);
  std::vector<double> observed(c * c, 0.0);
  std::vector<double> row(c, 0.0);
  std::vector<double> col(c, 0.0);
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= categories || b[i] < 0 || b[i] >= categories)
      throw PreconditionError("label outside 0.." +
                              std::to_string(categories - 1));
    const auto ai = static_cast<std::size_t>(a[i]);
    const auto bi = static_cast<std::size_t>(b[i]);
    observed[ai * c + bi] += 1.0 / n;
    row[ai] += 1.0 / n;
    col[bi] += 1.0 / n;
  }
  const double denom = static_cast<double>((c - 1) * (c - 1));
  double wo = 0.0;
  double we = 0.0;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      const double w = d * d / denom;
      wo += w * observed[i * c + j];
      we += w * row[i] * col[j];
    }
  if (we == 0.0) return 1.0;
  return 1.0 - wo / we;
}

double mean_per_topic_kappa(const AssessmentSet &a, const AssessmentSet &b,
                            std::span<const std::string> topics) {
  using DocLabels = std::map<std::string, int>;
  auto by_topic = [](const AssessmentSet &set) {
    std::map<std::string, DocLabels> out;
    for (const auto &[key, level] : set.labels) out[key.first][key.second] = level;
    return out;
  };
  const auto la = by_topic(a);
  const auto lb = by_topic(b);
  std::vector<std::string> wanted(topics.begin(), topics.end());
  if (wanted.empty())
    for (const auto &[topic, docs] : la) wanted.push_back(topic);
  if (wanted.empty()) throw PreconditionError("no topics to compare");

  double sum = 0.0;
  for (const auto &topic : wanted) {
    auto ia = la.find(topic);
    auto ib = lb.find(topic);
    if (ia == la.end() || ib == lb.end())
      throw PreconditionError("topic " + topic + " is not labelled by both '" +
                              a.assessor_id + "' and '" + b.assessor_id + "'");
    const DocLabels &da = ia->second;
    const DocLabels &db = ib->second;
    if (da.size() != db.size())
      throw PreconditionError("assessors label different documents for topic " +
                              topic);
    std::vector<int> va;
    std::vector<int> vb;
    for (const auto &[doc, level] : da) {
      auto it = db.find(doc);
      if (it == db.end())
        throw PreconditionError("document " + doc + " of topic " + topic +
                                " is not labelled by '" + b.assessor_id + "'");
      va.push_back(level);
      vb.push_back(it->second);
    }
    sum += weighted_kappa(va, vb, 3);
  }
  return sum / static_cast<double>(wanted.size());
}

}  // namespace wwweval
