// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "otamp/planner/execute.hpp"
#include "otamp/planner/param_algebra.hpp"
#include "otamp/planner/plan.hpp"
#include "otamp/planner/schedules.hpp"

namespace {

using namespace otamp;
using namespace otamp::planner;
using primitives::WotParams;
using reductions::ReductionStep;
using reductions::StepKind;

TEST(ParamAlgebra, ClosedForms) {
  const WotParams w{0.1, 0.2, 0.05};
  const auto r = algebra::r_reduce(w, 2);
  EXPECT_NEAR(r.p, 1 - 0.9 * 0.9, 1e-15);
  EXPECT_NEAR(r.q, 0.04, 1e-15);
  EXPECT_NEAR(r.eps, (1 - std::pow(0.9, 2)) / 2, 1e-15);
  const auto s = algebra::s_reduce(w, 3);
  EXPECT_NEAR(s.p, std::pow(0.1, 3), 1e-15);
  EXPECT_NEAR(s.q, 1 - std::pow(0.8, 3), 1e-15);
  const auto rot = algebra::rotor(w);
  EXPECT_EQ(rot.p, w.q);
  EXPECT_EQ(rot.q, w.p);
  EXPECT_EQ(r.provenance, primitives::Provenance::UpperBound);
}

TEST(ParamAlgebra, EReduceTailAndTelescoping) {
  EXPECT_NEAR(algebra::e_reduce({0, 0, 0.1}, 3).eps, 0.028, 1e-15);
  EXPECT_NEAR(algebra::binomial_tail(5, 3, 0.2), 10 * 0.008 * 0.64 + 5 * 0.0016 * 0.8 + 0.00032, 1e-15);
  EXPECT_NEAR(algebra::one_minus_pow(1e-12, 3), 3e-12, 1e-20);
  EXPECT_THROW(algebra::e_reduce({0, 0, 0.1}, 4), PreconditionError);
  // Applying R(2) twice is R(4).
  const WotParams w{0.3, 0.1, 0.07};
  const auto twice = algebra::r_reduce(algebra::r_reduce(w, 2), 2);
  const auto once = algebra::r_reduce(w, 4);
  EXPECT_NEAR(twice.p, once.p, 1e-15);
  EXPECT_NEAR(twice.q, once.q, 1e-15);
  EXPECT_NEAR(twice.eps, once.eps, 1e-15);
}

TEST(Plan, ZeroErrorMeetsTargetAndBound) {
  const auto plan = plan_zero_error(0.2, 0.2, 5);
  EXPECT_EQ(plan.theorem, "zero-error");
  EXPECT_DOUBLE_EQ(plan.leaf_count(), 256);
  EXPECT_LE(plan.leaf_count(), 2 * 25 / std::pow(0.6, 4));
  EXPECT_TRUE(plan.meets_target());
  EXPECT_NO_THROW(plan.validate());
}

TEST(Plan, OneSidedBothOrientations) {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0, 0.25}, {0.25, 0}}) {
    const auto plan = plan_one_sided(p, q, 0.01, 4);
    EXPECT_EQ(plan.theorem, "one-sided");
    EXPECT_TRUE(plan.meets_target());
    EXPECT_NO_THROW(plan.validate());
    for (const auto& n : plan.tree) EXPECT_TRUE(p == 0 ? n.claimed.p == 0 : n.claimed.q == 0);
  }
}

TEST(Plan, GeneralBranches) {
  struct Case {
    double p, q, eps;
    const char* phase;
  };
  for (const auto& c : {Case{0.02, 0.02, 0.02, "core-loop"}, Case{0.1, 0.1, 0.02, "region"},
                        Case{0.9, 0.001, 0.001, "precondition-s"}, Case{0.001, 0.9, 0.001, "precondition-r"},
                        Case{0.3, 0.3, 1e-5, "small-error"}}) {
    const auto result = plan(c.p, c.q, c.eps, 3);
    ASSERT_TRUE(std::holds_alternative<AmplificationPlan>(result)) << c.phase;
    const auto& pl = std::get<AmplificationPlan>(result);
    EXPECT_EQ(pl.theorem, c.phase);
    EXPECT_TRUE(pl.meets_target()) << c.phase;
    EXPECT_NO_THROW(pl.validate());
  }
}

TEST(Plan, Refusals) {
  const auto imp = plan(0.3, 0.3, 0.3, 3);
  ASSERT_TRUE(std::holds_alternative<Refusal>(imp));
  EXPECT_EQ(std::get<Refusal>(imp).kind, RefusalKind::Impossible);
  const auto out = plan(0.3, 0.3, 0.1, 3);
  ASSERT_TRUE(std::holds_alternative<Refusal>(out));
  EXPECT_EQ(std::get<Refusal>(out).kind, RefusalKind::OutsideKnownRegion);
  EXPECT_TRUE(check_impossible(0.5, 0.5, 0));
  EXPECT_FALSE(check_impossible(0.5, 0.4, 0));
}

TEST(Plan, ImpossibleTriplesAlwaysRefused) {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double p = u(g), q = u(g), lo = std::max(0.0, (1 - p - q) / 2);
    const auto r = plan(p, q, lo + (0.5 - lo) * u(g), 5);
    ASSERT_TRUE(std::holds_alternative<Refusal>(r));
    EXPECT_EQ(std::get<Refusal>(r).kind, RefusalKind::Impossible);
  }
}

TEST(Plan, IdentityOnlyForPerfectInput) {
  const auto r = plan(0, 0, 0, 10);
  ASSERT_TRUE(std::holds_alternative<AmplificationPlan>(r));
  EXPECT_TRUE(std::get<AmplificationPlan>(r).tree.empty());
  EXPECT_DOUBLE_EQ(std::get<AmplificationPlan>(r).leaf_count(), 1);
}

TEST(Plan, JsonRoundTrip) {
  const auto plan = plan_one_sided(0, 0.25, 0.01, 4);
  const auto text = to_json(plan);
  const auto back = plan_from_json(text);
  EXPECT_EQ(back.tree.size(), plan.tree.size());
  EXPECT_DOUBLE_EQ(back.leaf_count(), plan.leaf_count());
  EXPECT_EQ(to_json(back), text);
  auto j = nlohmann::json::parse(text);
  j["leaf_count"] = 7;
  EXPECT_THROW(plan_from_json(j.dump()), PreconditionError);
  j = nlohmann::json::parse(text);
  j["tree"][0]["claimed"]["p"] = 0;
  j["tree"][0]["claimed"]["q"] = 0;
  EXPECT_THROW(plan_from_json(j.dump()), PreconditionError);
}

TEST(Plan, ValidateCatchesWrongClaims) {
  auto plan = plan_zero_error(0.2, 0.2, 3);
  plan.tree[1].claimed.q /= 2;
  EXPECT_THROW(plan.validate(), PreconditionError);
}

TEST(Execute, ExactModeOnEventLeaves) {
  const auto plan = plan_zero_error(0.2, 0.2, 5);
  const auto rep = execute_plan(plan, primitives::event_model_sampler(0.2, 0.2, 0), {});
  EXPECT_TRUE(rep.ok());
  ASSERT_EQ(rep.nodes.size(), plan.tree.size() + 1);
  for (const auto& n : rep.nodes) EXPECT_LE(n.measured.p, n.claimed.p + 1e-9);
  EXPECT_NEAR(rep.root().measured.p, plan.root().p, 1e-9);
}

TEST(Execute, SimWotLeavesStayBelowClaims) {
  AmplificationPlan plan;
  plan.input = {0.2, 0.3, 0.25};
  plan.target_k = 2;
  plan.theorem = "manual";
  plan.push({StepKind::SReduce, 2}, "manual");
  plan.push({StepKind::RReduce, 2}, "manual");
  plan.push({StepKind::EReduce, 3}, "manual");
  const auto rep = execute_plan(plan, primitives::simwot_sampler(0.2, 0.3), {});
  EXPECT_TRUE(rep.ok());
}

TEST(Execute, MonteCarloIsSeededAndThreadIndependent) {
  const auto plan = plan_zero_error(0.2, 0.2, 3);
  ExecOptions opt;
  opt.mode = ExecMode::MonteCarlo;
  opt.trials = 300;
  opt.seed = 12;
  opt.jobs = 1;
  const auto a = execute_plan(plan, primitives::event_model_sampler(0.2, 0.2, 0), opt);
  opt.jobs = 4;
  const auto b = execute_plan(plan, primitives::event_model_sampler(0.2, 0.2, 0), opt);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_TRUE(a.ok());
}

TEST(Execute, BatchSizeMustDivide) {
  const auto plan = plan_zero_error(0.2, 0.2, 3);
  const auto leaves = primitives::sample_batch(primitives::event_model_sampler(0.2, 0.2, 0), 100, 1);
  ExecOptions opt;
  opt.mode = ExecMode::MonteCarlo;
  EXPECT_THROW(execute_plan_on_batch(plan, leaves, opt), PreconditionError);
}

}  // namespace
