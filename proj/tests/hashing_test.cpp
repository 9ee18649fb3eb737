// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "otamp/engine/rng.hpp"
#include "otamp/hashing/entropy.hpp"
#include "otamp/hashing/lhl.hpp"
#include "otamp/hashing/toeplitz.hpp"

namespace {

using namespace otamp::hashing;
using otamp::prob::FiniteDist;
using Pair = EntropySource::Pair;

// Naive product with an explicitly materialised Toeplitz matrix.
std::uint64_t naive_toeplitz(unsigned n, unsigned m, const std::vector<std::uint8_t>& s, std::uint64_t x) {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < m; ++i) {
    unsigned acc = 0;
    for (unsigned j = 0; j < n; ++j) acc ^= s[i + n - 1 - j] & ((x >> j) & 1);
    out |= std::uint64_t{acc} << i;
  }
  return out;
}

FiniteDist<std::uint64_t> uniform_bits(unsigned n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) d.push_back(x);
  return FiniteDist<std::uint64_t>::uniform(d);
}

TEST(MinEntropy, Examples) {
  EXPECT_NEAR(min_entropy(uniform_bits(8)), 8.0, 1e-12);
  EXPECT_NEAR(min_entropy(FiniteDist<int>::point(3)), 0.0, 1e-12);
  EXPECT_NEAR(min_entropy(FiniteDist<int>({{0, 0.5}, {1, 0.25}, {2, 0.25}})), 1.0, 1e-12);
  EXPECT_THROW(min_entropy(FiniteDist<int>()), otamp::PreconditionError);
}

TEST(ConditionalMinEntropy, Examples) {
  std::vector<std::pair<std::pair<int, int>, double>> e;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 3; ++y) e.push_back({{x, y}, 1.0 / 12});
  EXPECT_NEAR(conditional_min_entropy(FiniteDist<std::pair<int, int>>(e)), 2.0, 1e-12);

  FiniteDist<std::pair<int, int>> same({{{0, 0}, 0.3}, {{1, 1}, 0.7}});
  EXPECT_NEAR(conditional_min_entropy(same), 0.0, 1e-12);

  // P(x|y): y=0 -> {0: 2/3, 1: 1/3}; y=1 -> {2: 1}; best is 1 -> H = 0.
  FiniteDist<std::pair<int, int>> hand({{{0, 0}, 0.4}, {{1, 0}, 0.2}, {{2, 1}, 0.4}});
  EXPECT_NEAR(conditional_min_entropy(hand), 0.0, 1e-12);
  FiniteDist<std::pair<int, int>> hand2({{{0, 0}, 0.4}, {{1, 0}, 0.2}, {{2, 1}, 0.2}, {{0, 1}, 0.2}});
  EXPECT_NEAR(conditional_min_entropy(hand2), -std::log2(2.0 / 3.0), 1e-12);
}

TEST(ConditionalMinEntropy, Monotone) {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::pair<std::pair<int, std::pair<int, int>>, double>> e;
    double s = 0;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) {
          const double w = u(g);
          s += w;
          e.push_back({{x, {y, z}}, w});
        }
    for (auto& c : e) c.second /= s;
    FiniteDist<std::pair<int, std::pair<int, int>>> xyz(e);
    auto xz = xyz.map([](const auto& o) { return std::pair<int, int>(o.first, o.second.second); });
    EXPECT_GE(conditional_min_entropy(xz) + 1e-12, conditional_min_entropy(xyz));
  }
}

TEST(Toeplitz, TrivialCases) {
  const auto zero = ToeplitzHash::from_word(6, 3, 0);
  for (std::uint64_t x = 0; x < 64; ++x) EXPECT_EQ(zero(x), 0u);
  for (std::uint64_t s = 0; s < 256; ++s) EXPECT_EQ(ToeplitzHash::from_word(6, 3, s)(0), 0u);
}

TEST(Toeplitz, WorkedThreeByTwo) {
  // n = 3, m = 2, seed s0..s3 = 1,0,1,1.
  // T[i][j] = s[i - j + 2]:  row0 = (s2, s1, s0) = (1,0,1), row1 = (s3, s2, s1) = (1,1,0)
  const auto h = ToeplitzHash(3, 2, {1, 0, 1, 1});
  EXPECT_TRUE(h.entry(0, 0));
  EXPECT_FALSE(h.entry(0, 1));
  EXPECT_TRUE(h.entry(0, 2));
  EXPECT_TRUE(h.entry(1, 0));
  EXPECT_TRUE(h.entry(1, 1));
  EXPECT_FALSE(h.entry(1, 2));
  // x = (x0, x1, x2) = (1, 1, 0): out0 = 1, out1 = 0
  EXPECT_EQ(hash_eval(h, {0b011, 3}), (BitString{0b01, 2}));
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(h(x), naive_toeplitz(3, 2, h.seed(), x));
}

TEST(Toeplitz, MatchesNaiveAndIsLinear) {
  otamp::engine::Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng.uniform(20));
    const unsigned m = 1 + static_cast<unsigned>(rng.uniform(n));
    const auto h = ToeplitzHash::random(n, m, rng);
    const std::uint64_t a = rng.bits(n), b = rng.bits(n);
    EXPECT_EQ(h(a), naive_toeplitz(n, m, h.seed(), a));
    EXPECT_EQ(h(a ^ b), h(a) ^ h(b));
  }
}

TEST(Toeplitz, LengthChecks) {
  const auto h = ToeplitzHash::from_word(4, 2, 5);
  EXPECT_THROW(hash_eval(h, {1, 3}), otamp::PreconditionError);
  EXPECT_THROW(hash_eval(h, {0x1f, 4}), otamp::PreconditionError);
  EXPECT_THROW(ToeplitzHash(4, 5, std::vector<std::uint8_t>(8)), otamp::PreconditionError);
  EXPECT_THROW(ToeplitzHash(4, 2, std::vector<std::uint8_t>(4)), otamp::PreconditionError);
}

TEST(Collision, ExactOverAllSeeds) {
  for (unsigned n = 2; n <= 10; ++n) EXPECT_DOUBLE_EQ(exact_collision_rate(n, n, 5 % (1u << n), (5 % (1u << n)) ^ 1),
                                                     std::ldexp(1.0, -static_cast<int>(n)));
  EXPECT_LE(exact_collision_rate(8, 2, 0x12, 0xa7), 0.25);
  EXPECT_THROW(exact_collision_rate(8, 2, 3, 3), otamp::PreconditionError);
}

TEST(Collision, TwoUniversalExhaustive) {
  // Every distinct pair at n = 6, m = 3.
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = a + 1; b < 64; b += 7) EXPECT_LE(exact_collision_rate(6, 3, a, b), 0.125 + 1e-15);
}

TEST(Collision, MonteCarlo) {
  otamp::engine::Rng rng(77);
  const auto r = collision_probability_test(12, 3, 20000, rng);
  EXPECT_TRUE(r.ok) << r.rate;
  EXPECT_NEAR(r.rate, 0.125, 6 * r.sigma);
}

TEST(Lhl, UniformFullLength) {
  const auto src = EntropySource::single(uniform_bits(6), 6, 6);
  const auto r = lhl_verify(src, 6, 1.0);
  EXPECT_TRUE(r.ok);
  EXPECT_LE(r.measured, 1.0);
}

TEST(Lhl, EightBitsQuarter) {
  const auto src = EntropySource::single(uniform_bits(8), 8, 8);
  const auto r = lhl_verify(src, 4, 0.25);
  EXPECT_TRUE(r.ok) << r.measured;
  EXPECT_LE(r.measured, 0.25);
}

TEST(Lhl, FlatSourceOnSubset) {
  // Flat on 64 of the 256 strings: H = 6, eps = 0.5 admits m = 4.
  std::vector<std::uint64_t> sup;
  for (std::uint64_t x = 0; x < 64; ++x) sup.push_back((x * 37 + 11) & 0xff);
  const auto src = EntropySource::single(FiniteDist<std::uint64_t>::uniform(sup), 8, 6);
  const auto r = lhl_verify(src, 4, 0.5);
  EXPECT_TRUE(r.ok) << r.measured;
}

TEST(Lhl, PremiseViolation) {
  const auto src = EntropySource::single(uniform_bits(8), 8, 8);
  EXPECT_THROW(lhl_verify(src, 5, 0.25), otamp::PremiseViolation);
}

TEST(EntropySourceTest, FloorEnforced) {
  EXPECT_THROW(EntropySource::single(FiniteDist<std::uint64_t>::point(1), 4, 1), otamp::PremiseViolation);
}

EntropySource independent_uniform(unsigned bx, unsigned by) {
  std::vector<Pair> d;
  for (std::uint64_t x = 0; x < (1u << bx); ++x)
    for (std::uint64_t y = 0; y < (1u << by); ++y) d.push_back({x, y});
  return EntropySource::paired(FiniteDist<Pair>::uniform(d), bx, by, bx, by, bx + by);
}

TEST(DistributedLhl, IndependentUniformFullLength) {
  // With eps = 1 the premises admit m = |X|, n = |Y| when the total fits.
  const auto src = independent_uniform(2, 2);
  EXPECT_FALSE(distributed_lhl_premises(src, 2, 2, 1.0) == false);
  const auto r = distributed_lhl_verify(src, 2, 2, 1.0);
  EXPECT_TRUE(r.ok) << r.measured;
}

TEST(DistributedLhl, IndependentUniformSmallEps) {
  const auto src = independent_uniform(5, 5);
  const auto r = distributed_lhl_verify(src, 1, 1, 0.5);
  EXPECT_TRUE(r.ok) << r.measured;
  EXPECT_TRUE(r.ok_eps);
}

TEST(DistributedLhl, CorrelatedSplitBudget) {
  // X = Y uniform on 6 bits: H(X) = H(Y) = H(XY) = 6, eps = 0.5 -> m + n <= 4.
  std::vector<Pair> d;
  for (std::uint64_t x = 0; x < 64; ++x) d.push_back({x, x});
  const auto src = EntropySource::paired(FiniteDist<Pair>::uniform(d), 6, 6, 6, 6, 6);
  const auto r = distributed_lhl_verify(src, 2, 2, 0.5);
  EXPECT_TRUE(r.ok) << r.measured;
  EXPECT_THROW(distributed_lhl_verify(src, 3, 2, 0.5), otamp::PremiseViolation);
}

TEST(DistributedLhl, PremiseBroken) {
  const auto src = independent_uniform(4, 4);
  EXPECT_THROW(distributed_lhl_verify(src, 1, 1, 0.25), otamp::PremiseViolation);
}

TEST(DistributedLhl, ReducesToLhlForConstantY) {
  std::vector<std::pair<Pair, double>> e;
  otamp::engine::Rng rng(6);
  double s = 0;
  for (std::uint64_t x = 0; x < 128; ++x) {
    const double w = 1 + rng.unit();
    e.push_back({{x, 0}, w});
    s += w;
  }
  for (auto& c : e) c.second /= s;
  FiniteDist<Pair> dist(e);
  const double hx = min_entropy(dist.map([](const Pair& p) { return p.first; }));
  const auto pair_src = EntropySource::paired(dist, 7, 1, 0, 0, 0);
  const auto single = EntropySource::single(dist.map([](const Pair& p) { return p.first; }), 7, 0);
  const double eps = std::pow(2.0, -(hx - 3) / 2);  // m = 3 sits exactly at the premise
  const auto a = distributed_lhl_verify(pair_src, 3, 0, eps);
  const auto b = lhl_verify(single, 3, eps);
  EXPECT_NEAR(a.measured, b.measured, 1e-12);
  EXPECT_TRUE(b.ok);
}

TEST(DistributedLhl, CapEnforced) {
  const auto src = independent_uniform(8, 8);
  EXPECT_THROW(distributed_lhl_verify(src, 1, 1, 1.0, 1000), otamp::CapExceeded);
}

}  // namespace
