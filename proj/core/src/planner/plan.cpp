// SPDX-License-Identifier: Apache-2.0
#include "otamp/planner/plan.hpp"

#include <cmath>

#include <json.hpp>

#include "otamp/planner/param_algebra.hpp"

namespace otamp::planner {

using nlohmann::ordered_json;

namespace {

constexpr double kClaimTol = 1e-12;

ordered_json params_json(const WotParams& w) { return {{"p", w.p}, {"q", w.q}, {"eps", w.eps}}; }

WotParams params_from(const ordered_json& j) {
  WotParams w{j.at("p").get<double>(), j.at("q").get<double>(), j.at("eps").get<double>()};
  w.validate();
  return w;
}

ordered_json count_json(double n) {
  if (n < 9007199254740992.0) return static_cast<std::uint64_t>(n);
  return n;
}

}  // namespace

const char* refusal_name(RefusalKind k) {
  switch (k) {
    case RefusalKind::Impossible: return "impossible";
    case RefusalKind::OutsideKnownRegion: return "outside known-achievable region";
    case RefusalKind::PremiseFailed: return "premise failed";
    case RefusalKind::TooLarge: return "instance count too large";
  }
  return "?";
}

double AmplificationPlan::leaf_count() const {
  double n = 1;
  for (const auto& node : tree) n *= node.step.arity();
  return n;
}

double AmplificationPlan::target() const { return std::ldexp(1.0, -static_cast<int>(target_k)); }

bool AmplificationPlan::meets_target() const {
  const auto& r = root();
  const double t = target();
  if (input.eps == 0 && r.eps == 0) return r.p + r.q <= t;
  return r.p <= t && r.q <= t && r.eps <= t;
}

void AmplificationPlan::push(ReductionStep step, std::string phase, std::map<std::string, double> syms) {
  const WotParams next = algebra::apply(step, root());
  tree.push_back({step, next, std::move(phase), std::move(syms)});
}

void AmplificationPlan::validate() const {
  input.validate();
  WotParams cur = input;
  for (const auto& node : tree) {
    const WotParams expect = algebra::apply(node.step, cur);
    if (std::abs(expect.p - node.claimed.p) > kClaimTol || std::abs(expect.q - node.claimed.q) > kClaimTol ||
        std::abs(expect.eps - node.claimed.eps) > kClaimTol)
      throw PreconditionError("plan claim at " + node.step.name() + " disagrees with the parameter maps");
    cur = node.claimed;
  }
}

std::string to_json(const AmplificationPlan& plan, int indent) {
  ordered_json j;
  j["target_k"] = plan.target_k;
  j["input"] = params_json(plan.input);
  ordered_json tree = ordered_json::array();
  for (const auto& node : plan.tree) {
    ordered_json n = {{"kind", reductions::kind_name(node.step.kind)},
                      {"n", node.step.n},
                      {"claimed", params_json(node.claimed)},
                      {"phase", node.phase}};
    if (!node.symbols.empty()) n["symbols"] = node.symbols;
    tree.push_back(std::move(n));
  }
  j["tree"] = std::move(tree);
  j["leaf_count"] = count_json(plan.leaf_count());
  j["theorem"] = plan.theorem;
  j["root"] = params_json(plan.root());
  j["meets_target"] = plan.meets_target();
  if (plan.leaf_bound > 0) j["leaf_bound"] = plan.leaf_bound;
  if (!plan.symbols.empty()) j["symbols"] = plan.symbols;
  if (!plan.notes.empty()) j["notes"] = plan.notes;
  return j.dump(indent);
}

std::string to_json(const Refusal& r, int indent) {
  ordered_json j = {{"refused", true}, {"kind", refusal_name(r.kind)}, {"reason", r.reason}};
  return j.dump(indent);
}

AmplificationPlan plan_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("plan JSON: ") + e.what());
  }
  try {
    AmplificationPlan plan;
    plan.target_k = j.at("target_k").get<unsigned>();
    plan.input = params_from(j.at("input"));
    plan.theorem = j.value("theorem", "");
    plan.leaf_bound = j.value("leaf_bound", 0.0);
    for (const auto& n : j.at("tree")) {
      ReductionStep step{reductions::parse_kind(n.at("kind").get<std::string>()), n.at("n").get<unsigned>()};
      step.validate();
      PlanNode node{step, params_from(n.at("claimed")), n.value("phase", ""), {}};
      node.claimed.provenance = primitives::Provenance::UpperBound;
      if (n.contains("symbols")) node.symbols = n.at("symbols").get<std::map<std::string, double>>();
      plan.tree.push_back(std::move(node));
    }
    if (j.contains("symbols")) plan.symbols = j.at("symbols").get<std::map<std::string, double>>();
    const double declared = j.at("leaf_count").get<double>();
    if (declared != plan.leaf_count())
      throw PreconditionError("plan leaf_count " + std::to_string(declared) + " does not match the tree");
    plan.validate();
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("plan JSON: ") + e.what());
  }
}

}  // namespace otamp::planner
