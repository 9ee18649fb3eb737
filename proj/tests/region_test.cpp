// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "otamp/planner/param_algebra.hpp"
#include "otamp/planner/region.hpp"

namespace {

using namespace otamp;
using namespace otamp::planner;

TEST(Region, LevelZeroIsTheSeedFormula) {
  const RegionTable t(64, 0.02);
  for (double p : {0.0, 0.005, 0.01})
    for (double q : {0.0, 0.005}) EXPECT_NEAR(t.lookup(0, p, q), (0.02 - p - q) / 2, 1e-12);
  EXPECT_THROW(RegionTable(16, 0.02), PreconditionError);
}

TEST(Region, IterationIsMonotone) {
  const auto t = region_iterate(64, 5);
  EXPECT_EQ(t.rounds(), 5u);
  for (unsigned i = 1; i <= 5; ++i)
    for (unsigned a = 0; a <= 64; a += 8)
      for (unsigned b = 0; b <= 64; b += 8) EXPECT_GE(t.at(i, a, b) + 1e-15, t.at(i - 1, a, b));
}

TEST(Region, Inverses) {
  for (double e : {0.0, 0.01, 0.1, 0.3}) {
    const double s = s_inverse(e);
    EXPECT_NEAR(2 * s * (1 - s), e, 1e-12);
    EXPECT_NEAR(algebra::e_reduce({0, 0, e_inverse(e)}, 3).eps, e, 1e-10);
  }
}

TEST(Region, CheckpointsHold) {
  const auto cps = region_checkpoints(128);
  ASSERT_EQ(cps.size(), 2u);
  EXPECT_NEAR(cps[0].target_offset, 0.15, 1e-12);
  EXPECT_EQ(cps[0].rounds, 8u);
  EXPECT_NEAR(cps[1].target_offset, 0.24, 1e-12);
  EXPECT_EQ(cps[1].rounds, 11u);
  for (const auto& c : cps) {
    EXPECT_TRUE(c.ok());
    EXPECT_GT(c.points, 0u);
    EXPECT_GT(c.min_slack, 0);
  }
}

TEST(Region, TooFewRoundsFailCheckpoint) {
  const auto t = region_iterate(64, 1);
  EXPECT_FALSE(check_region(t, 0.24).ok());
}

TEST(Region, CsvShape) {
  const auto t = region_iterate(64, 2);
  std::istringstream in(t.to_csv());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "p,q,l_value");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 65u * 65u);
}

}  // namespace
