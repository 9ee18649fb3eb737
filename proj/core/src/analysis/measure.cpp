// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/measure.hpp"

#include <map>

#include "otamp/reductions/protocols.hpp"

namespace otamp::analysis {

WotJoint enumerate_sampler(const primitives::WotSampler& s, unsigned cap_bits) {
  engine::TapeSource tape(cap_bits);
  std::vector<std::pair<WotSample, double>> cells;
  do {
    WotSample x = s(tape);
    cells.emplace_back(std::move(x), tape.weight());
  } while (tape.advance());
  return WotJoint(std::move(cells));
}

WotJoint enumerate_wot_session(const engine::SessionSpec& spec, unsigned cap_bits) {
  return engine::enumerate_runs(spec, reductions::wot_from_transcript, cap_bits);
}

namespace {
using Key = std::pair<std::string, std::uint8_t>;

double adv(const std::map<Key, std::pair<double, double>>& rows) {
  double best = 0;
  for (const auto& [k, r] : rows) best += std::max(r.first, r.second);
  return std::max(0.0, 2 * best - 1);
}
}  // namespace

WotParams measure_wot_params(const WotJoint& joint) {
  std::map<Key, std::pair<double, double>> pc, qx;
  double eps = 0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const auto& s = joint.outcome(i);
    const double m = joint.mass_at(i);
    const std::uint8_t e = s.e();
    if (e) eps += m;
    auto& a = pc[{s.u, e}];
    (s.c ? a.second : a.first) += m;
    auto& b = qx[{s.v, e}];
    (s.x_other() ? b.second : b.first) += m;
  }
  return WotParams{adv(pc), adv(qx), eps, primitives::Provenance::Exact};
}

double xor_security_value(const XorJoint& joint) {
  return prob::pred_adv(prob::JointBitDist<std::string>::from(
      joint, [](const auto& t) { return std::get<0>(t) ^ std::get<1>(t); },
      [](const auto& t) { return std::get<2>(t); }));
}

XorJoint xor_joint(const WotJoint& joint) {
  return joint.map([](const WotSample& s) { return std::make_tuple(s.x0, s.x1, s.v); });
}

double xor_security_value(const WotJoint& joint) { return xor_security_value(xor_joint(joint)); }

}  // namespace otamp::analysis
