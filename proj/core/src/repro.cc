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

#include "wwweval/repro.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "wwweval/errors.h"
#include "wwweval/stats.h"

namespace wwweval {

namespace {

double mean(std::span<const double> x) {
  if (x.empty()) throw PreconditionError("empty score vector");
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

std::vector<double> deltas(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() != b.size())
    throw PreconditionError("A and B score vectors differ in length");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

void check_pair(const RunPairScores &p, const char *which) {
  if (p.a.size() != p.topics.size() || p.b.size() != p.topics.size())
    throw PreconditionError(std::string(which) +
                            " run pair is not aligned to its topic list");
  if (p.topics.empty())
    throw PreconditionError(std::string(which) + " run pair has no topics");
}

}  // namespace

double rmse_abs(std::span<const double> orig, std::span<const double> rep) {
  if (orig.size() != rep.size())
    throw PreconditionError("rmse: vectors differ in length");
  if (orig.empty()) throw PreconditionError("rmse: empty vectors");
  double ss = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i)
    ss += (orig[i] - rep[i]) * (orig[i] - rep[i]);
  return std::sqrt(ss / static_cast<double>(orig.size()));
}

double rmse_delta(std::span<const double> orig_a, std::span<const double> orig_b,
                  std::span<const double> rep_a, std::span<const double> rep_b) {
  return rmse_abs(deltas(orig_a, orig_b), deltas(rep_a, rep_b));
}

double effect_ratio(std::span<const double> orig_a, std::span<const double> orig_b,
                    std::span<const double> rep_a, std::span<const double> rep_b) {
  const double orig_effect = mean(orig_a) - mean(orig_b);
  if (orig_effect == 0.0)
    throw PreconditionError("effect ratio undefined: zero original effect");
  return (mean(rep_a) - mean(rep_b)) / orig_effect;
}

double delta_ri(std::span<const double> orig_a, std::span<const double> orig_b,
                std::span<const double> rep_a, std::span<const double> rep_b) {
  const double ob = mean(orig_b);
  const double rb = mean(rep_b);
  if (ob == 0.0 || rb == 0.0)
    throw PreconditionError("relative improvement undefined: zero baseline mean");
  return (mean(orig_a) - ob) / ob - (mean(rep_a) - rb) / rb;
}

double kendall_tau_union(std::span<const std::string> orig,
                         std::span<const std::string> rep, int cutoff) {
  if (orig.empty() || rep.empty())
    throw PreconditionError("kendall tau union needs non-empty lists");
  if (cutoff < 1) throw PreconditionError("cutoff must be >= 1");
  const auto k = static_cast<std::size_t>(cutoff);
  auto top = [k](std::span<const std::string> list) {
    return std::vector<std::string>(list.begin(),
                                    list.begin() + std::min(k, list.size()));
  };
  const auto top_orig = top(orig);
  const auto top_rep = top(rep);

  // Rank of every union member within `own`, extended by the members of
  // `other` that `own` lacks.
  auto ranks = [](const std::vector<std::string> &own,
                  const std::vector<std::string> &other) {
    std::map<std::string, double> r;
    for (const auto &d : own) r.emplace(d, static_cast<double>(r.size() + 1));
    for (const auto &d : other)
      if (!r.count(d)) r.emplace(d, static_cast<double>(r.size() + 1));
    return r;
  };
  const auto ro = ranks(top_orig, top_rep);
  const auto rr = ranks(top_rep, top_orig);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto &[doc, rank] : ro) {
    x.push_back(rank);
    y.push_back(rr.at(doc));
  }
  if (x.size() < 2) return 1.0;
  return kendall_tau_b(x, y);
}

double rbo(std::span<const std::string> orig, std::span<const std::string> rep,
           double persistence) {
  if (!(persistence > 0.0 && persistence < 1.0))
    throw PreconditionError("RBO persistence must lie in (0, 1)");
  const std::size_t depth = std::max(orig.size(), rep.size());
  if (depth == 0) return 1.0;
  std::set<std::string> seen_orig;
  std::set<std::string> seen_rep;
  std::size_t overlap = 0;
  double sum = 0.0;
  double weight = 1.0;
  double agreement = 0.0;
  for (std::size_t d = 1; d <= depth; ++d) {
    weight *= persistence;
    const bool has_orig = d <= orig.size();
    const bool has_rep = d <= rep.size();
    if (has_orig && has_rep && orig[d - 1] == rep[d - 1]) {
      ++overlap;
    } else {
      if (has_orig && seen_rep.count(orig[d - 1])) ++overlap;
      if (has_rep && seen_orig.count(rep[d - 1])) ++overlap;
    }
    if (has_orig) seen_orig.insert(orig[d - 1]);
    if (has_rep) seen_rep.insert(rep[d - 1]);
    agreement = static_cast<double>(overlap) / static_cast<double>(d);
    sum += agreement * weight;
  }
  return (1.0 - persistence) / persistence * sum + agreement * weight;
}

Reproduction::Reproduction(RunPairScores orig, RunPairScores rep)
    : orig_(std::move(orig)), rep_(std::move(rep)) {
  check_pair(orig_, "original");
  check_pair(rep_, "reproduced");
  if (orig_.topics != rep_.topics)
    throw PreconditionError(
        "reproducibility needs original and reproduced runs on the same topics");
}

double Reproduction::rmse_abs_a() const { return rmse_abs(orig_.a, rep_.a); }
double Reproduction::rmse_abs_b() const { return rmse_abs(orig_.b, rep_.b); }

double Reproduction::rmse_delta() const {
  return wwweval::rmse_delta(orig_.a, orig_.b, rep_.a, rep_.b);
}

double Reproduction::effect_ratio() const {
  return wwweval::effect_ratio(orig_.a, orig_.b, rep_.a, rep_.b);
}

double Reproduction::delta_ri() const {
  return wwweval::delta_ri(orig_.a, orig_.b, rep_.a, rep_.b);
}

Replication::Replication(RunPairScores orig, RunPairScores rep)
    : orig_(std::move(orig)), rep_(std::move(rep)) {
  check_pair(orig_, "original");
  check_pair(rep_, "replicated");
}

double Replication::effect_ratio() const {
  return wwweval::effect_ratio(orig_.a, orig_.b, rep_.a, rep_.b);
}

double Replication::delta_ri() const {
  return wwweval::delta_ri(orig_.a, orig_.b, rep_.a, rep_.b);
}

}  // namespace wwweval
