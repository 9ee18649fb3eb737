// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/conditions.hpp"

#include <array>
#include <map>
#include <tuple>

namespace otamp::analysis {

namespace {
constexpr double kTol = 1e-12;
}

MaliciousConditionReport check_rot_conditions_malicious(const XorJoint& joint, double eps) {
  MaliciousConditionReport r;
  r.xor_gap = xor_security_value(joint) / 2;

  std::map<std::string, std::array<double, 4>> by_v;  // index x0 * 2 + x1
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const auto& [x0, x1, v] = joint.outcome(i);
    by_v[v][x0 * 2 + x1] += joint.mass_at(i);
  }
  double gap = 0;
  for (const auto& [v, m] : by_v) {
    // Mass of (C, X_C, X_{1-C}) under the constructed C.
    double cell[2][2][2] = {};
    for (int x0 = 0; x0 < 2; ++x0)
      for (int x1 = 0; x1 < 2; ++x1) {
        const double w = m[x0 * 2 + x1];
        if (w <= 0) continue;
        const double c0 = std::min(m[x0 * 2], m[x0 * 2 + 1]);
        cell[0][x0][x1] += c0;
        cell[1][x1][x0] += w - c0;
      }
    for (int c = 0; c < 2; ++c)
      for (int xc = 0; xc < 2; ++xc) gap += std::abs(cell[c][xc][0] - cell[c][xc][1]) / 2;
  }
  r.value = gap;
  r.ok = r.value <= eps + kTol;
  return r;
}

MaliciousConditionReport check_rot_conditions_malicious(const ChoiceJoint& cu, double eps) {
  MaliciousConditionReport r;
  r.value = prob::pred_adv(prob::JointBitDist<std::string>(cu)) / 2;
  r.ok = r.value <= eps + kTol;
  return r;
}

MaliciousConditionReport check_rot_conditions_malicious(const WotJoint& joint, Side side, double eps) {
  if (side == Side::A) return check_rot_conditions_malicious(xor_joint(joint), eps);
  return check_rot_conditions_malicious(joint.map([](const WotSample& s) { return std::make_pair(s.c, s.u); }), eps);
}

SemiHonestConditionReport check_rot_conditions_semihonest(const WotJoint& joint, double eps) {
  SemiHonestConditionReport r;
  using Bits4 = std::array<std::uint8_t, 4>;
  auto outs = joint.map([](const WotSample& s) { return Bits4{s.x0, s.x1, s.c, s.y}; });
  std::vector<std::pair<Bits4, double>> ideal;
  std::vector<Bits4> all;
  for (std::uint8_t x0 = 0; x0 < 2; ++x0)
    for (std::uint8_t x1 = 0; x1 < 2; ++x1)
      for (std::uint8_t c = 0; c < 2; ++c)
        for (std::uint8_t y = 0; y < 2; ++y) {
          all.push_back({x0, x1, c, y});
          ideal.push_back({{x0, x1, c, y}, y == (c ? x1 : x0) ? 0.125 : 0.0});
        }
  r.correctness = prob::statistical_distance(outs.embed(all), prob::FiniteDist<Bits4>(ideal, false));

  const std::vector<std::uint8_t> bits{0, 1};
  r.receiver = prob::distance_from_uniform_given(
      joint.map([](const WotSample& s) { return std::make_pair(s.x_other(), std::make_tuple(s.c, s.y, s.v)); }),
      bits);
  r.sender = prob::distance_from_uniform_given(
      joint.map([](const WotSample& s) { return std::make_pair(s.c, std::make_tuple(s.x0, s.x1, s.u)); }), bits);
  const double mx = std::max({r.correctness, r.receiver, r.sender});
  r.error = 3 * mx;
  r.ok = mx <= eps + kTol;
  return r;
}

}  // namespace otamp::analysis
