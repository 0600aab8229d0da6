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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "wwweval/errors.h"
#include "wwweval/repro.h"

namespace wwweval {
namespace {

using Docs = std::vector<std::string>;
using Scores = std::vector<double>;

TEST(Rmse, Examples) {
  EXPECT_DOUBLE_EQ(rmse_abs(Scores{1, 0}, Scores{0, 1}), 1.0);
  Scores s{0.3, 0.4, 0.5};
  EXPECT_EQ(rmse_abs(s, s), 0.0);
  EXPECT_THROW(rmse_abs(Scores{1}, Scores{1, 2}), PreconditionError);
  EXPECT_THROW(rmse_abs(Scores{}, Scores{}), PreconditionError);
}

TEST(Rmse, ConstantDeltaOffset) {
  Scores a{0.5, 0.6, 0.7}, b{0.2, 0.1, 0.3};
  Scores ra, rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ra.push_back(a[i] + 0.1);
    rb.push_back(b[i]);
  }
  EXPECT_NEAR(rmse_delta(a, b, ra, rb), 0.1, 1e-15);
  EXPECT_EQ(rmse_delta(a, b, a, b), 0.0);
}

TEST(EffectRatio, IdentityAndSign) {
  Scores a{0.5, 0.6}, b{0.3, 0.2};
  EXPECT_DOUBLE_EQ(effect_ratio(a, b, a, b), 1.0);
  EXPECT_DOUBLE_EQ(effect_ratio(a, b, b, a), -1.0);
  // Replication over a different number of topics.
  EXPECT_NEAR(effect_ratio(a, b, Scores{0.4, 0.4, 0.4}, Scores{0.3, 0.3, 0.3}),
              0.1 / 0.3, 1e-12);
  EXPECT_THROW(effect_ratio(a, a, a, b), PreconditionError);
}

TEST(DeltaRi, IdentityAndExample) {
  Scores a{0.6, 0.6}, b{0.4, 0.4};
  EXPECT_EQ(delta_ri(a, b, a, b), 0.0);
  // RI_orig = 0.5, RI_rep = 0.2 / 0.5 = 0.4 ... here 0.1 / 0.4 = 0.25.
  EXPECT_NEAR(delta_ri(a, b, Scores{0.5}, b), 0.25, 1e-12);
  EXPECT_THROW(delta_ri(a, Scores{0.0, 0.0}, a, b), PreconditionError);
}

TEST(KendallTauUnion, Examples) {
  Docs a{"d1", "d2", "d3"};
  Docs rev{"d3", "d2", "d1"};
  EXPECT_DOUBLE_EQ(kendall_tau_union(a, a, 3), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau_union(a, rev, 3), -1.0);
  // Union {d1,d2,d3}: orig ranks (1,2,3), rep [d1,d3] puts d2 below the
  // cutoff at 3: pairs (d1,d2) +, (d1,d3) +, (d2,d3) -.
  EXPECT_NEAR(kendall_tau_union(a, Docs{"d1", "d3"}, 3), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(kendall_tau_union(Docs{"x"}, Docs{"x"}, 1), 1.0);
  // One adjacent swap out of three pairs.
  EXPECT_NEAR(kendall_tau_union(a, Docs{"d1", "d3", "d2"}, 3), 1.0 / 3.0, 1e-15);
}

TEST(KendallTauUnion, CutoffTruncates) {
  Docs a{"d1", "d2", "d3", "d4"};
  Docs b{"d1", "d2", "d4", "d3"};
  EXPECT_DOUBLE_EQ(kendall_tau_union(a, b, 2), 1.0);
  EXPECT_LT(kendall_tau_union(a, b, 4), 1.0);
}

TEST(Rbo, Examples) {
  Docs a{"d1", "d2", "d3"};
  EXPECT_NEAR(rbo(a, a, 0.8), 1.0, 1e-15);
  EXPECT_EQ(rbo(a, Docs{"x", "y", "z"}, 0.8), 0.0);
  EXPECT_NEAR(rbo(Docs{"d1", "d2"}, Docs{"d2", "d1"}, 0.9), 0.9, 1e-15);
  EXPECT_THROW(rbo(a, a, 1.0), PreconditionError);
  EXPECT_THROW(rbo(a, a, 0.0), PreconditionError);
}

TEST(Rbo, SymmetricBoundedAndPrefixMonotone) {
  std::mt19937_64 gen(21);
  for (int iter = 0; iter < 200; ++iter) {
    Docs universe;
    for (int i = 0; i < 12; ++i) universe.push_back("d" + std::to_string(i));
    std::shuffle(universe.begin(), universe.end(), gen);
    Docs x(universe.begin(), universe.begin() + 8);
    std::shuffle(universe.begin(), universe.end(), gen);
    Docs y(universe.begin(), universe.begin() + 8);
    const double v = rbo(x, y, 0.8);
    EXPECT_NEAR(v, rbo(y, x, 0.8), 1e-15);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-15);

    // Agreement over a longer common prefix never lowers RBO.
    const std::size_t keep = gen() % 8;
    Docs z = y;
    for (std::size_t i = 0; i < keep; ++i) {
      auto it = std::find(z.begin(), z.end(), x[i]);
      if (it != z.end()) {
        std::iter_swap(z.begin() + static_cast<long>(i), it);
      } else {
        z[i] = x[i];
      }
    }
    Docs prefix_x(x.begin(), x.begin() + static_cast<long>(keep));
    Docs prefix_z(z.begin(), z.begin() + static_cast<long>(keep));
    ASSERT_EQ(prefix_x, prefix_z);
    if (keep > 0) {
      EXPECT_NEAR(rbo(prefix_x, prefix_z, 0.8), 1.0, 1e-12);
    }
  }
}

TEST(Reproduction, MeasuresAndAlignment) {
  RunPairScores orig{{"1", "2"}, {0.6, 0.8}, {0.4, 0.4}};
  RunPairScores rep{{"1", "2"}, {0.5, 0.9}, {0.4, 0.5}};
  Reproduction r(orig, rep);
  EXPECT_NEAR(r.rmse_abs_a(), 0.1, 1e-12);
  EXPECT_NEAR(r.rmse_abs_b(), std::sqrt(0.005), 1e-12);
  EXPECT_NEAR(r.effect_ratio(), 0.25 / 0.3, 1e-12);

  RunPairScores other{{"1", "3"}, {0.5, 0.9}, {0.4, 0.5}};
  EXPECT_THROW(Reproduction(orig, other), PreconditionError);
  RunPairScores ragged{{"1", "2"}, {0.5}, {0.4, 0.5}};
  EXPECT_THROW(Reproduction(orig, ragged), PreconditionError);

  Replication rep2(orig, RunPairScores{{"9"}, {0.7}, {0.5}});
  EXPECT_NEAR(rep2.effect_ratio(), 0.2 / 0.3, 1e-12);
}

}  // namespace
}  // namespace wwweval
