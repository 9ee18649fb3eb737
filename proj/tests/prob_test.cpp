// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "otamp/prob/finite_dist.hpp"
#include "test_util.hpp"

namespace {

using namespace otamp::prob;
using otamp::testing::noisy_copy;
using otamp::testing::random_dist;
using otamp::testing::random_joint;

FiniteDist<int> bern(double p) { return FiniteDist<int>({{0, 1 - p}, {1, p}}); }

// Best predictor found by trying every f : Y -> {0, 1}.
double brute_pred_adv(const JointBitDist<int>& j) {
  const auto& rows = j.rows();
  const std::size_t n = rows.size();
  double best = 0;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << n); ++f) {
    double hit = 0;
    for (std::size_t i = 0; i < n; ++i) hit += ((f >> i) & 1) ? rows[i].p1 : rows[i].p0;
    best = std::max(best, 2 * hit - 1);
  }
  return best;
}

double brute_max_set(const FiniteDist<int>& a, const FiniteDist<int>& b) {
  double best = 0;
  for (unsigned s = 0; s < (1u << a.size()); ++s) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if ((s >> i) & 1) d += a.mass_at(i) - b.mass_at(i);
    best = std::max(best, d);
  }
  return best;
}

TEST(StatisticalDistance, Basics) {
  const auto p = bern(0.3);
  EXPECT_EQ(statistical_distance(p, p), 0.0);
  const auto a = FiniteDist<int>({{0, 1.0}, {1, 0.0}});
  const auto b = FiniteDist<int>({{0, 0.0}, {1, 1.0}});
  EXPECT_DOUBLE_EQ(statistical_distance(a, b), 1.0);
  EXPECT_NEAR(statistical_distance(bern(0.5), bern(0.75)), 0.25, 1e-15);
}

TEST(StatisticalDistance, DomainMismatchThrows) {
  EXPECT_THROW(statistical_distance(FiniteDist<int>::point(0), FiniteDist<int>::point(1)),
               otamp::DomainMismatch);
}

TEST(StatisticalDistance, TriangleInequality) {
  std::mt19937_64 g(11);
  for (int t = 0; t < 300; ++t) {
    auto a = random_dist<int>(g, {0, 1, 2, 3, 4});
    auto b = random_dist<int>(g, {0, 1, 2, 3, 4});
    auto c = random_dist<int>(g, {0, 1, 2, 3, 4});
    EXPECT_LE(statistical_distance(a, c), statistical_distance(a, b) + statistical_distance(b, c) + 1e-15);
    EXPECT_NEAR(statistical_distance(a, b), statistical_distance(b, a), 1e-15);
  }
}

TEST(StatisticalDistance, ExactRational) {
  FiniteDist<int, Rational> a({{0, Rational(1, 3)}, {1, Rational(2, 3)}});
  FiniteDist<int, Rational> b({{0, Rational(1, 2)}, {1, Rational(1, 2)}});
  EXPECT_EQ(statistical_distance(a, b), Rational(1, 6));
}

TEST(FiniteDist, RejectsBadMasses) {
  EXPECT_THROW(FiniteDist<int>({{0, 0.5}, {1, 0.6}}), otamp::PreconditionError);
  EXPECT_THROW(FiniteDist<int>({{0, -0.1}, {1, 1.1}}), otamp::PreconditionError);
  EXPECT_NO_THROW(FiniteDist<int>({{0, 0.0}, {1, 1.0}}));
}

TEST(FiniteDist, MergesDuplicatesAndSorts) {
  FiniteDist<int> d({{3, 0.25}, {1, 0.5}, {3, 0.25}});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.outcome(0), 1);
  EXPECT_DOUBLE_EQ(d.prob(3), 0.5);
  EXPECT_DOUBLE_EQ(d.prob(7), 0.0);
}

TEST(MaxSetAdvantage, TrivialCases) {
  const auto p = bern(0.4);
  auto r = max_set_advantage(p, p);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.set.empty());
  const auto a = FiniteDist<int>({{0, 1.0}, {1, 0.0}});
  const auto b = FiniteDist<int>({{0, 0.0}, {1, 1.0}});
  r = max_set_advantage(a, b);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.set, std::vector<int>{0});
}

TEST(MaxSetAdvantage, MatchesSubsetSearchAndDistance) {
  std::mt19937_64 g(5);
  for (int t = 0; t < 500; ++t) {
    auto a = random_dist<int>(g, {0, 1, 2, 3});
    auto b = random_dist<int>(g, {0, 1, 2, 3});
    const auto r = max_set_advantage(a, b);
    EXPECT_NEAR(r.value, brute_max_set(a, b), 1e-14);
    EXPECT_NEAR(r.value, statistical_distance(a, b), 1e-14);
  }
}

TEST(PredAdv, Examples) {
  using O = std::pair<std::uint8_t, int>;
  JointBitDist<int> indep(FiniteDist<O>({{O(0, 0), 0.25}, {O(0, 1), 0.25}, {O(1, 0), 0.25}, {O(1, 1), 0.25}}));
  EXPECT_NEAR(pred_adv(indep), 0.0, 1e-15);
  JointBitDist<int> det(FiniteDist<O>({{O(0, 5), 0.3}, {O(1, 7), 0.7}}));
  EXPECT_NEAR(pred_adv(det), 1.0, 1e-15);
  EXPECT_NEAR(pred_adv(noisy_copy(0.9)), 0.8, 1e-15);
}

TEST(PredAdv, AgreesWithDistanceAndBruteForce) {
  std::mt19937_64 g(99);
  for (int t = 0; t < 200; ++t) {
    const auto j = random_joint(g, 1 + static_cast<int>(g() % 12));
    const double pa = pred_adv(j);
    EXPECT_NEAR(pa, 2 * distance_to_uniform_bit(j), 1e-12);
    EXPECT_NEAR(pa, brute_pred_adv(j), 1e-12);
  }
}

TEST(PredAdv, DataProcessing) {
  std::mt19937_64 g(3);
  for (int t = 0; t < 200; ++t) {
    const auto j = random_joint(g, 8);
    const int mod = 1 + static_cast<int>(g() % 4);
    JointBitDist<int> coarse(j.joint().map([mod](const auto& o) {
      return std::pair<std::uint8_t, int>(o.first, o.second % mod);
    }));
    EXPECT_LE(pred_adv(coarse), pred_adv(j) + 1e-14);
  }
}

TEST(PredAdv, ExactRationalBridge) {
  using O = std::pair<std::uint8_t, int>;
  JointBitDist<int, Rational> j(FiniteDist<O, Rational>({{O(0, 0), Rational(1, 3)},
                                                        {O(1, 0), Rational(1, 6)},
                                                        {O(0, 1), Rational(1, 12)},
                                                        {O(1, 1), Rational(5, 12)}}));
  EXPECT_EQ(pred_adv(j), Rational(2) * distance_to_uniform_bit(j));
  EXPECT_EQ(pred_adv(j), Rational(1, 2));
}

TEST(EventDecomposition, Examples) {
  using O = std::pair<std::uint8_t, int>;
  JointBitDist<int> indep(FiniteDist<O>({{O(0, 0), 0.25}, {O(0, 1), 0.25}, {O(1, 0), 0.25}, {O(1, 1), 0.25}}));
  EXPECT_NEAR(leakage_event_decompose(indep).pr_b1, 0.0, 1e-15);
  JointBitDist<int> det(FiniteDist<O>({{O(0, 0), 0.5}, {O(1, 1), 0.5}}));
  EXPECT_NEAR(leakage_event_decompose(det).pr_b1, 1.0, 1e-15);

  const auto d = leakage_event_decompose(noisy_copy(0.9));
  EXPECT_NEAR(d.pr_b1, 0.8, 1e-15);
  EXPECT_NEAR(pred_adv(d.given(0)), 0.0, 1e-12);
}

TEST(EventDecomposition, RoundTripAndUnbiased) {
  std::mt19937_64 g(17);
  for (int t = 0; t < 200; ++t) {
    const auto j = random_joint(g, 6);
    const auto d = leakage_event_decompose(j);
    EXPECT_NEAR(d.pr_b1, pred_adv(j), 1e-12);
    const auto back = d.reconstruct();
    ASSERT_TRUE(back.same_domain(j.joint()));
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back.mass_at(i), j.joint().mass_at(i), 1e-15);
    if (d.pr_b1 < 1 - 1e-12) {
      EXPECT_NEAR(pred_adv(d.given(0)), 0.0, 1e-12);
    }
  }
}

TEST(EventDecomposition, ZeroMassCellsGetNoEvent) {
  using O = std::pair<std::uint8_t, int>;
  JointBitDist<int> j(FiniteDist<O>({{O(0, 0), 0.5}, {O(1, 0), 0.0}, {O(0, 1), 0.25}, {O(1, 1), 0.25}}));
  const auto d = leakage_event_decompose(j);
  EXPECT_EQ(d.leak_probability(1, 0), 0.0);
  EXPECT_EQ(d.leak_probability(0, 0), 1.0);
}

TEST(XorBound, Examples) {
  auto unb = noisy_copy(0.5);
  auto r = xor_pred_bound_check<int, double>({unb, unb});
  EXPECT_NEAR(r.lhs, 0.0, 1e-15);
  EXPECT_TRUE(r.ok);

  auto strong = noisy_copy(0.9);
  r = xor_pred_bound_check<int, double>({strong, strong});
  EXPECT_LE(r.lhs, 0.64 + 1e-12);
  EXPECT_NEAR(r.rhs, 0.64, 1e-12);
  EXPECT_TRUE(r.ok);

  using O = std::pair<std::uint8_t, int>;
  JointBitDist<int> det(FiniteDist<O>({{O(0, 0), 0.5}, {O(1, 1), 0.5}}));
  r = xor_pred_bound_check<int, double>({det, unb});
  EXPECT_NEAR(r.lhs, 0.0, 1e-15);
  EXPECT_NEAR(r.rhs, 0.0, 1e-15);
  EXPECT_TRUE(r.ok);
}

TEST(XorBound, HoldsOnRandomTriples) {
  std::mt19937_64 g(23);
  for (int t = 0; t < 100; ++t) {
    std::vector<JointBitDist<int>> ds;
    for (int i = 0; i < 3; ++i) ds.push_back(random_joint(g, 3));
    EXPECT_TRUE(xor_pred_bound_check(ds).ok);
  }
}

TEST(XorBound, CapEnforced) {
  std::mt19937_64 g(1);
  std::vector<JointBitDist<int>> ds(4, random_joint(g, 16));
  EXPECT_THROW(xor_pred_bound_check(ds, 1000), otamp::CapExceeded);
}

TEST(OrBound, Examples) {
  auto unb = noisy_copy(0.5);
  auto r = or_pred_bound_check<int, double>({unb, unb, unb});
  EXPECT_NEAR(r.lhs, 0.0, 1e-15);

  auto strong = noisy_copy(0.9);
  r = or_pred_bound_check<int, double>({strong, strong});
  EXPECT_NEAR(r.rhs, 0.96, 1e-12);
  EXPECT_LE(r.lhs, 0.96 + 1e-12);
  EXPECT_TRUE(r.ok);

  using O = std::pair<std::uint8_t, int>;
  JointBitDist<int> det(FiniteDist<O>({{O(0, 0), 0.5}, {O(1, 1), 0.5}}));
  r = or_pred_bound_check<int, double>({strong, det});
  EXPECT_NEAR(r.rhs, 1.0, 1e-15);
  EXPECT_TRUE(r.ok);
}

TEST(OrBound, HoldsOnRandomTriples) {
  std::mt19937_64 g(29);
  for (int t = 0; t < 100; ++t) {
    std::vector<JointBitDist<int>> ds;
    for (int i = 0; i < 3; ++i) ds.push_back(random_joint(g, 3));
    EXPECT_TRUE(or_pred_bound_check(ds).ok);
  }
}

TEST(ThreeBitGap, Examples) {
  EXPECT_NEAR(three_bit_uniformity_gap(FiniteDist<Cube>::uniform(cube_points())), 0.0, 1e-15);
  EXPECT_NEAR(three_bit_uniformity_gap(FiniteDist<Cube>::point({1, 0, 1})), 7.0 / 8.0, 1e-15);
}

// a = e = f = 1/8 + 5/4 eps, the other five cells 1/8 - 3/4 eps.
TEST(ThreeBitGap, ExtremalConstruction) {
  const double eps = 0.04;
  const double hi = 0.125 + 1.25 * eps, lo = 0.125 - 0.75 * eps;
  const auto pts = cube_points();
  std::vector<std::pair<Cube, double>> e;
  for (std::size_t i = 0; i < pts.size(); ++i) e.push_back({pts[i], (i == 0 || i == 4 || i == 5) ? hi : lo});
  const double gap = three_bit_uniformity_gap(FiniteDist<Cube>(std::move(e)));
  EXPECT_NEAR(gap, 3.75 * eps, 1e-14);
  EXPECT_LE(gap, 4 * eps);
}

TEST(DistanceFromUniformGiven, MatchesBitForm) {
  std::mt19937_64 g(31);
  for (int t = 0; t < 50; ++t) {
    const auto j = random_joint(g, 5);
    const auto as_pair = j.joint().map([](const auto& o) { return std::pair<int, int>(o.first, o.second); });
    EXPECT_NEAR(distance_from_uniform_given(as_pair, std::vector<int>{0, 1}), distance_to_uniform_bit(j), 1e-14);
  }
}

}  // namespace
