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

#include "wwweval/measures.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include "wwweval/errors.h"
#include "wwweval/parallel.h"

namespace wwweval {

GainMap::GainMap(std::vector<double> gains) : gains_(std::move(gains)) {
  if (gains_.empty() || gains_[0] != 0.0)
    throw PreconditionError("gain map must start with gain(0) = 0");
  for (std::size_t i = 1; i < gains_.size(); ++i)
    if (!(gains_[i] >= gains_[i - 1]) || !std::isfinite(gains_[i]))
      throw PreconditionError("gain map must be finite and non-decreasing");
}

GainMap GainMap::linear(int max_level) {
  if (max_level < 0) throw PreconditionError("negative max level");
  std::vector<double> gains(static_cast<std::size_t>(max_level) + 1);
  for (std::size_t i = 0; i < gains.size(); ++i)
    gains[i] = static_cast<double>(i);
  return GainMap(std::move(gains));
}

double GainMap::gain(int level) const {
  if (level < 0 || level > max_level())
    throw PreconditionError("relevance level L" + std::to_string(level) +
                            " outside gain map L0-L" +
                            std::to_string(max_level()));
  return gains_[static_cast<std::size_t>(level)];
}

void MeasureConfig::validate() const {
  if (cutoff < 1) throw PreconditionError("cutoff must be >= 1");
  if (!(persistence > 0.0 && persistence < 1.0))
    throw PreconditionError("persistence must lie in (0, 1)");
}

std::string_view measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kNdcg:
      return "nDCG";
    case MeasureKind::kQ:
      return "Q";
    case MeasureKind::kNerr:
      return "nERR";
    case MeasureKind::kIrbu:
      return "iRBU";
  }
  return "?";
}

MeasureKind parse_measure(std::string_view name) {
  std::string lower(name);
  for (auto &c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "ndcg") return MeasureKind::kNdcg;
  if (lower == "q") return MeasureKind::kQ;
  if (lower == "nerr") return MeasureKind::kNerr;
  if (lower == "irbu") return MeasureKind::kIrbu;
  throw PreconditionError("unknown measure '" + std::string(name) + "'");
}

namespace {

int level_of(const TopicQrels &judged, const std::string &doc) {
  auto it = judged.find(doc);
  return it == judged.end() ? 0 : it->second;
}

std::size_t depth(std::span<const std::string> ranked, int cutoff) {
  if (cutoff < 1) throw PreconditionError("cutoff must be >= 1");
  return std::min(ranked.size(), static_cast<std::size_t>(cutoff));
}

// Gains of the top-k retrieved documents.
std::vector<double> run_gains(std::span<const std::string> ranked,
                              const TopicQrels &judged, const GainMap &gains,
                              int cutoff) {
  std::vector<double> out(depth(ranked, cutoff));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = gains.gain(level_of(judged, ranked[i]));
  return out;
}

// Positive gains of every judged document, descending.
std::vector<double> ideal_gains(const TopicQrels &judged,
                                const GainMap &gains) {
  std::vector<double> out;
  for (const auto &[doc, level] : judged) {
    double g = gains.gain(level);
    if (g > 0.0) out.push_back(g);
  }
  if (out.empty())
    throw PreconditionError("topic has no relevant documents");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double dcg(std::span<const double> g, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(k, g.size()); ++i)
    sum += g[i] / std::log2(static_cast<double>(i) + 2.0);
  return sum;
}

double err(std::span<const double> g, std::size_t k, double g_max) {
  double sum = 0.0;
  double reach = 1.0;
  for (std::size_t i = 0; i < std::min(k, g.size()); ++i) {
    double p = g[i] / g_max;
    sum += reach * p / static_cast<double>(i + 1);
    reach *= 1.0 - p;
  }
  return sum;
}

}  // namespace

double ndcg(std::span<const std::string> ranked, const TopicQrels &judged,
            const GainMap &gains, int cutoff) {
  const auto ideal = ideal_gains(judged, gains);
  const auto g = run_gains(ranked, judged, gains, cutoff);
  const auto k = static_cast<std::size_t>(cutoff);
  return dcg(g, k) / dcg(ideal, k);
}

double qmeasure(std::span<const std::string> ranked, const TopicQrels &judged,
                const GainMap &gains, int cutoff) {
  const auto ideal = ideal_gains(judged, gains);
  const auto g = run_gains(ranked, judged, gains, cutoff);
  double sum = 0.0;
  double cg = 0.0;
  double ideal_cg = 0.0;
  int relevant = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cg += g[i];
    if (i < ideal.size()) ideal_cg += ideal[i];
    if (g[i] > 0.0) {
      ++relevant;
      sum += (relevant + cg) / (static_cast<double>(i + 1) + ideal_cg);
    }
  }
  const auto norm = std::min<std::size_t>(ideal.size(),
                                          static_cast<std::size_t>(cutoff));
  return sum / static_cast<double>(norm);
}

double nerr(std::span<const std::string> ranked, const TopicQrels &judged,
            const GainMap &gains, int cutoff) {
  const auto ideal = ideal_gains(judged, gains);
  const auto g = run_gains(ranked, judged, gains, cutoff);
  const auto k = static_cast<std::size_t>(cutoff);
  return err(g, k, gains.max_gain()) / err(ideal, k, gains.max_gain());
}

double irbu(std::span<const std::string> ranked, const TopicQrels &judged,
            int cutoff, double persistence) {
  if (!(persistence > 0.0 && persistence < 1.0))
    throw PreconditionError("persistence must lie in (0, 1)");
  bool any_relevant = std::any_of(judged.begin(), judged.end(),
                                  [](const auto &kv) { return kv.second > 0; });
  if (!any_relevant) throw PreconditionError("topic has no relevant documents");
  const std::size_t n = depth(ranked, cutoff);
  double sum = 0.0;
  double discount = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (level_of(judged, ranked[i]) > 0) sum += discount;
    discount *= persistence;
  }
  return sum / static_cast<double>(cutoff);
}

namespace {

class NdcgMeasure final : public Measure {
 public:
  std::string_view name() const override { return "nDCG"; }
  double evaluate(std::span<const std::string> ranked, const TopicQrels &judged,
                  const GainMap &gains,
                  const MeasureConfig &config) const override {
    return ndcg(ranked, judged, gains, config.cutoff);
  }
};

class QMeasure final : public Measure {
 public:
  std::string_view name() const override { return "Q"; }
  double evaluate(std::span<const std::string> ranked, const TopicQrels &judged,
                  const GainMap &gains,
                  const MeasureConfig &config) const override {
    return qmeasure(ranked, judged, gains, config.cutoff);
  }
};

class NerrMeasure final : public Measure {
 public:
  std::string_view name() const override { return "nERR"; }
  double evaluate(std::span<const std::string> ranked, const TopicQrels &judged,
                  const GainMap &gains,
                  const MeasureConfig &config) const override {
    return nerr(ranked, judged, gains, config.cutoff);
  }
};

class IrbuMeasure final : public Measure {
 public:
  std::string_view name() const override { return "iRBU"; }
  double evaluate(std::span<const std::string> ranked, const TopicQrels &judged,
                  const GainMap &, const MeasureConfig &config) const override {
    return irbu(ranked, judged, config.cutoff, config.persistence);
  }
};

}  // namespace

std::unique_ptr<Measure> make_measure(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kNdcg:
      return std::make_unique<NdcgMeasure>();
    case MeasureKind::kQ:
      return std::make_unique<QMeasure>();
    case MeasureKind::kNerr:
      return std::make_unique<NerrMeasure>();
    case MeasureKind::kIrbu:
      return std::make_unique<IrbuMeasure>();
  }
  throw PreconditionError("unknown measure kind");
}

ScoreMatrix score_matrix(std::span<const Run> runs, const Qrels &qrels,
                         const Measure &measure, const MeasureConfig &config,
                         unsigned threads) {
  config.validate();
  if (runs.empty()) throw PreconditionError("empty run set");
  const GainMap gains = GainMap::linear(qrels.max_level);

  std::vector<std::string> topics;
  std::vector<const TopicQrels *> judged;
  for (const auto &[topic, docs] : qrels.labels) {
    bool any = std::any_of(docs.begin(), docs.end(),
                           [](const auto &kv) { return kv.second > 0; });
    if (!any)
      throw PreconditionError("topic " + topic +
                              " has no relevant documents in the qrels");
    topics.push_back(topic);
    judged.push_back(&docs);
  }
  std::vector<std::string> systems;
  for (const auto &run : runs) systems.push_back(run.run_id);

  const std::size_t m = runs.size();
  std::vector<double> cells(topics.size() * m, 0.0);
  parallel_for(cells.size(), threads, [&](std::size_t cell) {
    const std::size_t t = cell / m;
    const std::size_t s = cell % m;
    auto ranked = runs[s].doc_ids(topics[t]);
    if (ranked.empty()) return;
    cells[cell] = measure.evaluate(ranked, *judged[t], gains, config);
  });
  return ScoreMatrix(std::move(topics), std::move(systems), std::move(cells));
}

}  // namespace wwweval
