// Copyright 2026 The FGO Authors
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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "fgo/evaluation.hpp"
#include "fgo/stats.hpp"
#include "fgo/synthetic.hpp"
#include "fgo/tuning.hpp"
#include "oracles.hpp"

namespace fgo {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GroundTruth, SingleRow) {
  auto gt = load_ground_truth(LabelMap(1, 3, std::vector<std::int32_t>{1, -1, 0}));
  ASSERT_EQ(gt.records.size(), 1u);
  EXPECT_EQ(gt.records[0].x, 1);
  EXPECT_EQ(gt.records[0].y, 0);
  EXPECT_DOUBLE_EQ(gt.records[0].nx, -1.0);
  EXPECT_DOUBLE_EQ(gt.records[0].ny, 0.0);
  EXPECT_TRUE(load_ground_truth(LabelMap(4, 4, 0)).records.empty());
}

TEST(GroundTruth, AnnulusPointsInward) {
  for (double radius : {12.0, 20.0, 26.0}) {
    StimulusParams p;
    p.radius = radius;
    auto gt = generate_synthetic_stimulus(StimulusKind::annulus, p).ground_truth;
    ASSERT_GT(gt.records.size(), 4 * radius);
    for (const auto& rec : gt.records) {
      EXPECT_NEAR(std::hypot(rec.nx, rec.ny), 1.0, 1e-6);
      double rx = 31.5 - rec.x, ry = 31.5 - rec.y, len = std::hypot(rx, ry);
      EXPECT_GT((rec.nx * rx + rec.ny * ry) / len, std::cos(25.0 * kPi / 180.0)) << radius;
    }
  }
}

DirectedMaps single_map(std::size_t orientation, Side side, double value = 1.0) {
  auto maps = DirectedMaps::zeros(5, 5);
  maps.at(orientation, side)(2, 2) = value;
  return maps;
}

TEST(Decide, Examples) {
  auto d = decide_figure(single_map(0, Side::plus), 2, 2);
  EXPECT_FALSE(d.tie);
  EXPECT_NEAR(d.dx, 0.0, 1e-12);
  EXPECT_NEAR(d.dy, 1.0, 1e-12);
  EXPECT_TRUE(decide_figure(DirectedMaps::zeros(5, 5), 2, 2).tie);
  // Radius 1 reaches the 4-neighbours, not the diagonals.
  EXPECT_FALSE(decide_figure(single_map(3, Side::minus), 3, 2).tie);
  EXPECT_TRUE(decide_figure(single_map(3, Side::minus), 3, 3).tie);
  auto opposed = single_map(2, Side::plus, 2.0);
  opposed.at(2, Side::minus)(2, 1) = 2.0;
  EXPECT_TRUE(decide_figure(opposed, 2, 2).tie);
}

TEST(Decide, ScaleInvariant) {
  std::mt19937_64 rng(61);
  DirectedMaps a, b;
  for (std::size_t d = 0; d < 16; ++d) {
    a.maps[d] = oracle::random_map(rng, 6, 6, 0.0, 1.0);
    b.maps[d] = scaled(a.maps[d], 3.25);
  }
  for (long y = 0; y < 6; ++y)
    for (long x = 0; x < 6; ++x) {
      auto da = decide_figure(a, x, y), db = decide_figure(b, x, y);
      EXPECT_EQ(da.dx, db.dx);
      EXPECT_EQ(da.dy, db.dy);
    }
}

std::vector<BoundaryRecord> random_records(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> a(0.0, 2 * kPi);
  std::vector<BoundaryRecord> out(n);
  for (auto& r : out) {
    double t = a(rng);
    r.nx = std::cos(t);
    r.ny = std::sin(t);
  }
  return out;
}

TEST(Fgca, Examples) {
  std::mt19937_64 rng(62);
  auto recs = random_records(rng, 200);
  std::vector<Decision> same, half;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    same.push_back({recs[i].nx, recs[i].ny, false});
    double s = i % 2 ? -1.0 : 1.0;
    half.push_back({s * recs[i].nx, s * recs[i].ny, false});
  }
  EXPECT_DOUBLE_EQ(score_decisions(same, recs).accuracy(), 1.0);
  EXPECT_DOUBLE_EQ(score_decisions(half, recs).accuracy(), 0.5);
  std::vector<Decision> ties(recs.size());
  auto tied = score_decisions(ties, recs);
  EXPECT_DOUBLE_EQ(tied.accuracy(), 0.5);
  EXPECT_EQ(tied.ties, recs.size());
}

TEST(Fgca, RandomDecisionsAtChance) {
  std::mt19937_64 rng(63);
  auto recs = random_records(rng, 100000);
  std::uniform_real_distribution<double> a(0.0, 2 * kPi);
  std::vector<Decision> ds;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    double t = a(rng);
    ds.push_back({std::cos(t), std::sin(t), false});
  }
  EXPECT_NEAR(score_decisions(ds, recs).accuracy(), 0.5, 0.01);
}

TEST(Fgca, OrderInvariantAndTwoAnnotations) {
  auto st = generate_synthetic_stimulus(StimulusKind::isolated_square);
  auto maps = DirectedMaps::zeros(64, 64);
  // Every pixel says "down": only the top edge is right.
  for (auto& v : maps.at(0, Side::plus).values()) v = 1.0;
  FGGroundTruth shuffled = st.ground_truth;
  std::mt19937_64 rng(64);
  std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
  double a = score_ground_truth(maps, st.ground_truth).accuracy();
  EXPECT_DOUBLE_EQ(a, score_ground_truth(maps, shuffled).accuracy());
  EXPECT_GT(a, 0.0);
  EXPECT_LT(a, 1.0);

  FGGroundTruth flipped = st.ground_truth;
  for (auto& r : flipped.records) r.nx = -r.nx, r.ny = -r.ny;
  std::vector<FGGroundTruth> two{st.ground_truth, flipped};
  auto res = compute_fgca("sq", maps, two);
  ASSERT_TRUE(res.has_value());
  double b = score_ground_truth(maps, flipped).accuracy();
  EXPECT_DOUBLE_EQ(res->accuracy, 0.5 * (a + b));
  EXPECT_EQ(res->boundary_pixels, 2 * st.ground_truth.records.size());
  std::vector<FGGroundTruth> none{FGGroundTruth{64, 64, {}}};
  EXPECT_FALSE(compute_fgca("empty", maps, none).has_value());
}

TEST(Report, PixelWeighted) {
  ImageResult a{"a", 1.0, 10, 0, 10.0, {}}, b{"b", 0.5, 30, 2, 15.0, {}};
  auto rep = make_report({a, b});
  EXPECT_DOUBLE_EQ(rep.aggregate, 25.0 / 40.0);
  EXPECT_DOUBLE_EQ(rep.per_image_mean, 0.75);
  EXPECT_NEAR(rep.std_dev, std::sqrt(0.125), 1e-12);
  std::ostringstream out;
  write_report(out, rep);
  EXPECT_NE(out.str().find("aggregate_fgca=0.625"), std::string::npos);
}

TEST(Split, Examples) {
  auto two = make_split({"x", "y"}, 5);
  EXPECT_EQ(two.train_ids.size(), 1u);
  EXPECT_EQ(two.test_ids.size(), 1u);
  EXPECT_NE(two.train_ids[0], two.test_ids[0]);
  std::vector<std::string> ids;
  for (int i = 0; i < 200; ++i) ids.push_back("im" + std::to_string(i));
  auto s1 = make_split(ids, 42), s2 = make_split(ids, 42);
  EXPECT_EQ(s1.train_ids, s2.train_ids);
  EXPECT_EQ(s1.train_ids.size(), 100u);
  EXPECT_EQ(s1.test_ids.size(), 100u);
  std::set<std::string> all(s1.train_ids.begin(), s1.train_ids.end());
  all.insert(s1.test_ids.begin(), s1.test_ids.end());
  EXPECT_EQ(all.size(), 200u);
  EXPECT_NE(make_split(ids, 43).train_ids, s1.train_ids);
  EXPECT_THROW(make_split({"only"}, 1), ArgumentError);
}

TEST(TTest, Examples) {
  std::vector<double> a{0.2, 0.4, 0.9, 0.1, 0.5};
  EXPECT_NEAR(right_tailed_t_test(a, a).p, 0.5, 1e-12);
  std::vector<double> ones{1, 1, 1, 1}, zeros{0, 0, 0, 0};
  EXPECT_LT(right_tailed_t_test(ones, zeros).p, 0.001);
  EXPECT_THROW(right_tailed_t_test(ones, ones), DegenerateInputError);
  std::vector<double> tiny{1.0};
  EXPECT_THROW(right_tailed_t_test(tiny, a), ArgumentError);
}

TEST(TTest, TextbookAgainstIntegratedDensity) {
  std::vector<double> a{20.4, 24.2, 15.4, 21.4, 20.2, 18.5, 21.5, 19.7, 22.0, 23.3};
  std::vector<double> b{20.2, 16.9, 18.5, 17.3, 20.5, 16.4, 19.0, 18.1, 17.8, 18.8};
  auto res = right_tailed_t_test(a, b);
  // Pooled-variance t by hand.
  auto mean = [](const std::vector<double>& v) { double s = 0; for (double x : v) s += x; return s / v.size(); };
  double ma = mean(a), mb = mean(b), ssa = 0, ssb = 0;
  for (double x : a) ssa += (x - ma) * (x - ma);
  for (double x : b) ssb += (x - mb) * (x - mb);
  double sp = (ssa + ssb) / 18.0, t = (ma - mb) / std::sqrt(sp * (0.1 + 0.1));
  EXPECT_NEAR(res.t, t, 1e-12);
  EXPECT_DOUBLE_EQ(res.df, 18.0);
  EXPECT_NEAR(res.p, oracle::t_upper_tail(t, 18.0), 1e-4);
  EXPECT_NEAR(right_tailed_t_test(b, a).p, 1.0 - res.p, 1e-9);
  EXPECT_GT(res.p, 0.0);
  EXPECT_LT(res.p, 1.0);
}

TEST(TTest, UpperTailAgreesWithOracle) {
  for (double df : {1.0, 3.0, 12.0, 40.0})
    for (double t : {0.1, 0.8, 2.0, 4.5}) EXPECT_NEAR(student_t_upper_tail(t, df), oracle::t_upper_tail(t, df), 1e-8);
}

BatchObjective planted(double target) {
  return [target](std::span<const ModelWeights> ws) {
    std::vector<double> out;
    for (const auto& w : ws) out.push_back(-(w.alpha_sa - target) * (w.alpha_sa - target));
    return out;
  };
}

TEST(GridSearch, PlantedQuadratic) {
  std::vector<WeightName> names{WeightName::alpha_ref, WeightName::alpha_sa};
  auto res = grid_search_weights(names, planted(0.65));
  EXPECT_NEAR(res.best.alpha_sa, 0.65, res.final_step);
  EXPECT_NEAR(res.best.alpha_ref + res.best.alpha_sa, 1.0, 1e-9);
  EXPECT_EQ(res.best.alpha_tj, 0.0);
  EXPECT_TRUE(res.stopped_by_threshold);
  for (const auto& p : res.trace) {
    EXPECT_GE(res.best_objective, p.round == 0 ? p.objective : -1e9);
    EXPECT_NEAR(p.weights.alpha_ref + p.weights.alpha_sa + p.weights.alpha_tj, 1.0, 1e-9);
  }
  for (std::size_t i = 1; i < res.round_best.size(); ++i) EXPECT_GE(res.round_best[i], res.round_best[i - 1]);
}

TEST(GridSearch, OffGridOptimum) {
  std::vector<WeightName> names{WeightName::alpha_ref, WeightName::alpha_sa};
  auto res = grid_search_weights(names, planted(0.6180339));
  EXPECT_NEAR(res.best.alpha_sa, 0.6180339, res.final_step);
}

TEST(GridSearch, ThreeWeightsStayOnSimplex) {
  std::vector<WeightName> names{WeightName::alpha_ref, WeightName::alpha_sa, WeightName::alpha_tj};
  auto obj = [](std::span<const ModelWeights> ws) {
    std::vector<double> out;
    for (const auto& w : ws)
      out.push_back(-std::pow(w.alpha_ref - 0.05, 2) - std::pow(w.alpha_sa - 0.15, 2) - std::pow(w.alpha_tj - 0.8, 2));
    return out;
  };
  auto res = grid_search_weights(names, obj);
  EXPECT_NEAR(res.best.alpha_ref, 0.05, 1e-9);
  EXPECT_NEAR(res.best.alpha_sa, 0.15, 1e-9);
  EXPECT_NEAR(res.best.alpha_tj, 0.80, 1e-9);
  for (const auto& p : res.trace) {
    EXPECT_GE(p.weights.alpha_ref, 0.0);
    EXPECT_GE(p.weights.alpha_sa, 0.0);
    EXPECT_GE(p.weights.alpha_tj, 0.0);
  }
}

TEST(GridSearch, SingleWeight) {
  std::vector<WeightName> names{WeightName::alpha_ref};
  auto res = grid_search_weights(names, planted(0.3));
  EXPECT_EQ(res.best.alpha_ref, 1.0);
  EXPECT_EQ(res.best.alpha_sa, 0.0);
  EXPECT_EQ(res.best.alpha_tj, 0.0);
  EXPECT_THROW(grid_search_weights({}, planted(0.3)), ArgumentError);
}

TEST(GridSearch, WeightNames) {
  EXPECT_EQ(parse_weight_name("alphaSA"), WeightName::alpha_sa);
  EXPECT_EQ(to_string(WeightName::alpha_tj), "alphaTJ");
  EXPECT_THROW(parse_weight_name("beta"), std::exception);
}

}  // namespace
}  // namespace fgo
