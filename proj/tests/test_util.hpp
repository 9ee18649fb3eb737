// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "otamp/prob/finite_dist.hpp"

namespace otamp::testing {

// Random joint of a bit with side information in [0, ny).
inline prob::JointBitDist<int> random_joint(std::mt19937_64& g, int ny) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<std::pair<std::uint8_t, int>, double>> e;
  double s = 0;
  for (int y = 0; y < ny; ++y)
    for (std::uint8_t x = 0; x < 2; ++x) {
      const double w = u(g) < 0.15 ? 0.0 : u(g);
      e.push_back({{x, y}, w});
      s += w;
    }
  if (s == 0) {
    e[0].second = 1;
    s = 1;
  }
  for (auto& c : e) c.second /= s;
  return prob::JointBitDist<int>(prob::FiniteDist<std::pair<std::uint8_t, int>>(std::move(e), false));
}

template <class T>
prob::FiniteDist<T> random_dist(std::mt19937_64& g, std::vector<T> dom) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<T, double>> e;
  double s = 0;
  for (auto& x : dom) {
    const double w = u(g);
    s += w;
    e.push_back({x, w});
  }
  for (auto& c : e) c.second /= s;
  return prob::FiniteDist<T>(std::move(e), false);
}

// Y = X with probability `agree`, X uniform.
inline prob::JointBitDist<int> noisy_copy(double agree) {
  using O = std::pair<std::uint8_t, int>;
  return prob::JointBitDist<int>(prob::FiniteDist<O>(
      {{O(0, 0), agree / 2}, {O(0, 1), (1 - agree) / 2}, {O(1, 1), agree / 2}, {O(1, 0), (1 - agree) / 2}}));
}

}  // namespace otamp::testing
