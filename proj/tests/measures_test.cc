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

#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "wwweval/errors.h"
#include "wwweval/measures.h"

namespace wwweval {
namespace {

using Docs = std::vector<std::string>;

const GainMap kLinear4 = GainMap::linear(4);

TEST(Ndcg, HandComputedExample) {
  TopicQrels q{{"d1", 2}, {"d2", 1}, {"d3", 0}};
  Docs ranked{"d1", "d3", "d2"};  // levels L2, L0, L1
  // 2.5 / (2 + 1/log2(3))
  EXPECT_NEAR(ndcg(ranked, q, GainMap::linear(2), 3), 0.9502344167898356, 1e-15);
}

TEST(Ndcg, IdealIsOneAndIrrelevantIsZero) {
  TopicQrels q{{"a", 4}, {"b", 2}, {"c", 1}};
  EXPECT_DOUBLE_EQ(ndcg(Docs{"a", "b", "c"}, q, kLinear4, 10), 1.0);
  EXPECT_DOUBLE_EQ(ndcg(Docs{"x", "y"}, q, kLinear4, 10), 0.0);
}

TEST(Ndcg, NoRelevantDocsIsError) {
  TopicQrels q{{"a", 0}};
  EXPECT_THROW(ndcg(Docs{"a"}, q, kLinear4, 10), PreconditionError);
  EXPECT_THROW(qmeasure(Docs{"a"}, q, kLinear4, 10), PreconditionError);
  EXPECT_THROW(nerr(Docs{"a"}, q, kLinear4, 10), PreconditionError);
  EXPECT_THROW(irbu(Docs{"a"}, q, 10, 0.99), PreconditionError);
}

TEST(QMeasure, Examples) {
  TopicQrels q{{"a", 4}, {"b", 2}};
  EXPECT_DOUBLE_EQ(qmeasure(Docs{"a", "b"}, q, kLinear4, 10), 1.0);
  EXPECT_DOUBLE_EQ(qmeasure(Docs{"x"}, q, kLinear4, 10), 0.0);
  // Only dX is relevant (L2); it is retrieved second: (1 + 2) / (2 + 2).
  TopicQrels single{{"dX", 2}};
  EXPECT_DOUBLE_EQ(qmeasure(Docs{"dOther", "dX"}, single, kLinear4, 2), 0.75);
}

TEST(Nerr, Examples) {
  TopicQrels q{{"top", 4}, {"b", 1}};
  EXPECT_DOUBLE_EQ(nerr(Docs{"top", "zzz", "b"}, q, kLinear4, 10), 1.0);
  EXPECT_DOUBLE_EQ(nerr(Docs{"zzz"}, q, kLinear4, 10), 0.0);
  // [L2, L4] on L0-L4: ERR = 0.5 + (1/2)(0.5)(1) = 0.75, ideal ERR = 1.
  TopicQrels two{{"x2", 2}, {"x4", 4}};
  EXPECT_DOUBLE_EQ(nerr(Docs{"x2", "x4"}, two, kLinear4, 2), 0.75);
}

TEST(Irbu, Examples) {
  TopicQrels q;
  Docs ranked;
  for (int i = 0; i < 12; ++i) {
    q["d" + std::to_string(i)] = 1;
    ranked.push_back("d" + std::to_string(i));
  }
  EXPECT_NEAR(irbu(ranked, q, 10, 0.99), 0.9561792499119551, 1e-15);
  EXPECT_DOUBLE_EQ(irbu(Docs{"u1", "u2"}, q, 10, 0.99), 0.0);
  EXPECT_DOUBLE_EQ(irbu(Docs{"d0", "u1"}, q, 1, 0.99), 1.0);
  EXPECT_THROW(irbu(ranked, q, 10, 1.0), PreconditionError);
}

TEST(GainMap, Validation) {
  EXPECT_THROW(GainMap({1.0, 2.0}), PreconditionError);
  EXPECT_THROW(GainMap({0.0, 2.0, 1.0}), PreconditionError);
  EXPECT_THROW(kLinear4.gain(5), PreconditionError);
  EXPECT_DOUBLE_EQ(kLinear4.max_gain(), 4.0);
}

TEST(ParseMeasure, Names) {
  EXPECT_EQ(parse_measure("nDCG"), MeasureKind::kNdcg);
  EXPECT_EQ(parse_measure("q"), MeasureKind::kQ);
  EXPECT_EQ(parse_measure("NERR"), MeasureKind::kNerr);
  EXPECT_EQ(parse_measure("irbu"), MeasureKind::kIrbu);
  EXPECT_THROW(parse_measure("map"), PreconditionError);
}

struct Instance {
  TopicQrels qrels;
  std::vector<int> judged_levels;
  Docs ranked;
  std::vector<int> ranked_levels;
};

// Up to six judged documents with levels 0..4 (at least one relevant), a
// ranking that mixes judged and unjudged documents.
Instance random_instance(std::mt19937_64 &gen) {
  Instance in;
  const int n = 1 + static_cast<int>(gen() % 6);
  for (int i = 0; i < n; ++i) {
    int level = static_cast<int>(gen() % 5);
    in.qrels["j" + std::to_string(i)] = level;
    in.judged_levels.push_back(level);
  }
  if (std::all_of(in.judged_levels.begin(), in.judged_levels.end(),
                  [](int l) { return l == 0; })) {
    in.qrels["j0"] = 3;
    in.judged_levels[0] = 3;
  }
  Docs pool;
  for (const auto &[doc, level] : in.qrels) pool.push_back(doc);
  pool.push_back("u0");
  pool.push_back("u1");
  std::shuffle(pool.begin(), pool.end(), gen);
  const auto len = 1 + gen() % pool.size();
  for (std::size_t i = 0; i < len; ++i) {
    in.ranked.push_back(pool[i]);
    auto it = in.qrels.find(pool[i]);
    in.ranked_levels.push_back(it == in.qrels.end() ? 0 : it->second);
  }
  return in;
}

TEST(Measures, MatchDirectFormulaOracle) {
  std::mt19937_64 gen(2026);
  for (int iter = 0; iter < 2000; ++iter) {
    Instance in = random_instance(gen);
    for (int k : {1, 2, 3, 5, 10}) {
      EXPECT_NEAR(ndcg(in.ranked, in.qrels, kLinear4, k),
                  oracle::ndcg(in.ranked_levels, in.judged_levels, k), 1e-12);
      EXPECT_NEAR(qmeasure(in.ranked, in.qrels, kLinear4, k),
                  oracle::q(in.ranked_levels, in.judged_levels, k), 1e-12);
      EXPECT_NEAR(nerr(in.ranked, in.qrels, kLinear4, k),
                  oracle::nerr(in.ranked_levels, in.judged_levels, k, 4), 1e-12);
      EXPECT_NEAR(irbu(in.ranked, in.qrels, k, 0.99),
                  oracle::irbu(in.ranked_levels, k, 0.99), 1e-12);
    }
  }
}

TEST(Measures, SwapMonotonicity) {
  std::mt19937_64 gen(99);
  for (int iter = 0; iter < 500; ++iter) {
    Instance in = random_instance(gen);
    if (in.ranked.size() < 2) continue;
    for (std::size_t i = 0; i + 1 < in.ranked.size(); ++i) {
      if (in.ranked_levels[i] >= in.ranked_levels[i + 1]) continue;
      Docs better = in.ranked;
      std::swap(better[i], better[i + 1]);
      for (int k : {1, 3, 5}) {
        EXPECT_GE(ndcg(better, in.qrels, kLinear4, k) + 1e-12,
                  ndcg(in.ranked, in.qrels, kLinear4, k));
        EXPECT_GE(qmeasure(better, in.qrels, kLinear4, k) + 1e-12,
                  qmeasure(in.ranked, in.qrels, kLinear4, k));
        EXPECT_GE(nerr(better, in.qrels, kLinear4, k) + 1e-12,
                  nerr(in.ranked, in.qrels, kLinear4, k));
      }
    }
  }
}

TEST(Measures, GainScaleInvariance) {
  std::mt19937_64 gen(5);
  GainMap scaled({0.0, 3.5, 7.0, 10.5, 14.0});
  for (int iter = 0; iter < 300; ++iter) {
    Instance in = random_instance(gen);
    for (int k : {1, 3, 5}) {
      EXPECT_NEAR(ndcg(in.ranked, in.qrels, scaled, k),
                  ndcg(in.ranked, in.qrels, kLinear4, k), 1e-12);
      EXPECT_NEAR(nerr(in.ranked, in.qrels, scaled, k),
                  nerr(in.ranked, in.qrels, kLinear4, k), 1e-12);
    }
  }
}

wwweval::Run make_run(const std::string &id,
             const std::map<std::string, Docs> &topics) {
  wwweval::Run run{id, {}};
  for (const auto &[topic, docs] : topics)
    for (std::size_t i = 0; i < docs.size(); ++i)
      run.rankings[topic].push_back(
          {docs[i], static_cast<int>(i + 1), 1.0 / static_cast<double>(i + 1)});
  return run;
}

TEST(ScoreMatrix, SingleCell) {
  Qrels qrels{{{"t", {{"a", 2}, {"b", 0}}}}, 2};
  std::vector<wwweval::Run> runs{make_run("r", {{"t", {"b", "a"}}})};
  auto measure = make_measure(MeasureKind::kNdcg);
  ScoreMatrix m = score_matrix(runs, qrels, *measure, {10, 0.99});
  ASSERT_EQ(m.num_topics(), 1u);
  ASSERT_EQ(m.num_systems(), 1u);
  EXPECT_DOUBLE_EQ(m.at(0, 0), 2.0 / std::log2(3.0) / 2.0);
}

TEST(ScoreMatrix, MissingTopicScoresZeroAndThreadsAgree) {
  Qrels qrels{{{"t1", {{"a", 2}, {"b", 1}}}, {"t2", {{"c", 4}}}}, 4};
  std::vector<wwweval::Run> runs{make_run("r1", {{"t1", {"a", "b"}}, {"t2", {"c"}}}),
                        make_run("r2", {{"t1", {"b", "x"}}})};
  for (auto kind : {MeasureKind::kNdcg, MeasureKind::kQ, MeasureKind::kNerr,
                    MeasureKind::kIrbu}) {
    auto measure = make_measure(kind);
    ScoreMatrix serial = score_matrix(runs, qrels, *measure, {10, 0.99}, 1);
    ScoreMatrix parallel = score_matrix(runs, qrels, *measure, {10, 0.99}, 4);
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(serial.at(1, 1), 0.0);
    EXPECT_EQ(serial.systems(), (std::vector<std::string>{"r1", "r2"}));
  }
}

TEST(ScoreMatrix, Errors) {
  Qrels qrels{{{"t1", {{"a", 0}}}}, 2};
  std::vector<wwweval::Run> runs{make_run("r1", {{"t1", {"a"}}})};
  auto measure = make_measure(MeasureKind::kNdcg);
  EXPECT_THROW(score_matrix(runs, qrels, *measure, {}), PreconditionError);
  EXPECT_THROW(score_matrix(std::span<const wwweval::Run>{}, qrels, *measure, {}),
               PreconditionError);
}

}  // namespace
}  // namespace wwweval
