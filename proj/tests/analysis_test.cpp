// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include <json.hpp>

#include "otamp/analysis/conditions.hpp"
#include "otamp/analysis/estimate.hpp"
#include "otamp/analysis/measure.hpp"
#include "otamp/analysis/report.hpp"
#include "otamp/analysis/uot_security.hpp"
#include "otamp/reductions/protocols.hpp"

namespace {

using namespace otamp;
using namespace otamp::analysis;
using primitives::WotSample;

TEST(Measure, PerfectRotHasZeroParameters) {
  const auto joint = enumerate_sampler(primitives::event_model_sampler(0, 0, 0));
  const auto w = measure_wot_params(joint);
  EXPECT_NEAR(w.p, 0, 1e-12);
  EXPECT_NEAR(w.q, 0, 1e-12);
  EXPECT_NEAR(w.eps, 0, 1e-12);
  EXPECT_EQ(w.provenance, primitives::Provenance::Exact);
}

TEST(Measure, FullyLeakyViews) {
  // A sees c, B sees both strings and c: p = q = 1.
  std::vector<std::pair<WotSample, double>> cells;
  for (std::uint8_t x0 = 0; x0 < 2; ++x0)
    for (std::uint8_t x1 = 0; x1 < 2; ++x1)
      for (std::uint8_t c = 0; c < 2; ++c) {
        const std::string v = std::to_string(x0) + std::to_string(x1) + std::to_string(c);
        WotSample s{x0, x1, c, c ? x1 : x0, std::to_string(c), v};
        cells.push_back({s, 0.125});
      }
  const auto w = measure_wot_params(WotJoint(std::move(cells)));
  EXPECT_NEAR(w.p, 1, 1e-12);
  EXPECT_NEAR(w.q, 1, 1e-12);
  EXPECT_NEAR(xor_security_value(WotJoint(enumerate_sampler(primitives::event_model_sampler(0, 0, 0)))), 0, 1e-12);
}

TEST(Estimate, HoeffdingRadius) {
  EXPECT_NEAR(hoeffding_radius(1000, 0.05), std::sqrt(std::log(40.0) / 2000), 1e-15);
  EXPECT_THROW(hoeffding_radius(0, 0.1), PreconditionError);
  EXPECT_THROW(hoeffding_radius(10, 0), PreconditionError);
}

TEST(Estimate, RecoversEventModelWithinRadius) {
  const auto batch = primitives::sample_batch(primitives::event_model_sampler(0.2, 0.1, 0.05), 40000, 21);
  const auto e = estimate_wot_params(batch, 1e-3);
  EXPECT_EQ(e.trials, 40000u);
  EXPECT_NEAR(e.eps.value, 0.05, e.eps.radius);
  EXPECT_NEAR(e.p.value, 0.2, e.p.radius);
  EXPECT_NEAR(e.q.value, 0.1, e.q.radius);
  EXPECT_EQ(e.p.method, Method::MonteCarloOptimalPredictor);
  EXPECT_EQ(e.params().provenance, primitives::Provenance::Estimated);
}

TEST(Estimate, DegenerateBatchIsFlagged) {
  const std::vector<WotSample> same(100, WotSample{0, 1, 0, 0, "u", "v"});
  const auto e = estimate_wot_params(same);
  EXPECT_TRUE(e.degenerate);
  EXPECT_EQ(e.eps.value, 0);
  EXPECT_THROW(estimate_wot_params({}), PreconditionError);
}

TEST(Conditions, SemiHonestOnIdealAndLeakyJoints) {
  const auto ideal = enumerate_sampler(primitives::event_model_sampler(0, 0, 0));
  const auto r = check_rot_conditions_semihonest(ideal, 1e-12);
  EXPECT_TRUE(r.ok);
  EXPECT_NEAR(r.correctness, 0, 1e-12);
  const auto leaky = enumerate_sampler(primitives::event_model_sampler(0.2, 0.3, 0.1));
  const auto l = check_rot_conditions_semihonest(leaky, 0.05);
  EXPECT_FALSE(l.ok);
  EXPECT_NEAR(l.sender, 0.1, 1e-12);
  EXPECT_NEAR(l.receiver, 0.15, 0.1);
}

TEST(Conditions, MaliciousSides) {
  const auto leaky = enumerate_sampler(primitives::event_model_sampler(0.2, 0, 0));
  const auto b = check_rot_conditions_malicious(leaky, Side::B, 0.05);
  EXPECT_NEAR(b.value, 0.1, 1e-12);
  EXPECT_FALSE(b.ok);
  const auto a = check_rot_conditions_malicious(enumerate_sampler(primitives::event_model_sampler(0, 0, 0)), Side::A,
                                                1e-12);
  EXPECT_TRUE(a.ok);
}

TEST(UotSecurity, ChoiceProbabilityTable) {
  EXPECT_NEAR(uot_choice_zero_probability(false, false), 0.5, 1e-12);
  EXPECT_NEAR(uot_choice_zero_probability(true, false) + uot_choice_zero_probability(false, true), 1, 1e-12);
}

TEST(UotSecurity, FastPathMatchesEnumeration) {
  for (const auto& adv :
       {primitives::UotAdversary::uniform(3), primitives::UotAdversary::fixed_bits(3, 0x07, 0x28),
        primitives::UotAdversary::function_of(3, 0x07, [](std::uint64_t f) { return (f ^ 5) << 3; })}) {
    const auto fast = uot_closeness(adv, 3, 1, 0.5);
    const auto slow = uot_closeness_bruteforce(adv, 3, 1, 0.5);
    EXPECT_NEAR(fast.closeness, slow.closeness, 1e-12);
    EXPECT_LE(fast.closeness, fast.bound);
  }
}

TEST(UotSecurity, PremiseReported) {
  const auto r = uot_closeness(primitives::UotAdversary::uniform(8), 8, 1, 0.25);
  EXPECT_FALSE(r.premise);
  EXPECT_NEAR(r.admissible_ell, -2, 1e-12);
  EXPECT_NEAR(r.bound, 0.5, 1e-12);
  EXPECT_NEAR(r.min_entropy, 16, 1e-12);
}

TEST(Report, JsonShape) {
  const auto joint = enumerate_sampler(primitives::event_model_sampler(0.1, 0.1, 0.1));
  const auto j = nlohmann::json::parse(to_json(exact_report(joint, 0.2)));
  EXPECT_NEAR(j["epsilon"].get<double>(), 0.1, 1e-12);
  EXPECT_NEAR(j["p"].get<double>(), 0.1, 1e-12);
  EXPECT_EQ(j["method"], "exact");
  EXPECT_TRUE(j.contains("radius"));
  EXPECT_TRUE(j["conditions"].contains("semi_honest"));
}

}  // namespace
