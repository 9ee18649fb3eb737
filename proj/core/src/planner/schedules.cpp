// SPDX-License-Identifier: Apache-2.0
#include "otamp/planner/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "otamp/planner/param_algebra.hpp"
#include "otamp/planner/region.hpp"

namespace otamp::planner {

using reductions::StepKind;

namespace {

constexpr double kMaxN = 1u << 30;
constexpr unsigned kRegionResolution = 128;
constexpr unsigned kDescentGuard = 64;
constexpr double kRegionGate = 0.24 + 1e-12;

[[noreturn]] void refuse(RefusalKind k, const std::string& why) { throw PlanRefused({k, why}); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

unsigned count(double n, const char* what) {
  if (!(n <= kMaxN)) refuse(RefusalKind::TooLarge, std::string(what) + " = " + fmt(n) + " instances exceeds 2^30");
  return static_cast<unsigned>(std::max(1.0, n));
}

unsigned odd(unsigned n) { return n % 2 ? n : n + 1; }

AmplificationPlan start(double p, double q, double eps, unsigned k) {
  AmplificationPlan plan;
  plan.input = {p, q, eps, primitives::Provenance::Exact, 0};
  plan.input.validate();
  plan.target_k = k;
  if (check_impossible(p, q, eps))
    refuse(RefusalKind::Impossible, "p + q + 2 eps = " + fmt(p + q + 2 * eps) + " >= 1: no protocol exists");
  return plan;
}

ReductionStep reduce(StepKind kind, unsigned n) { return {kind, n}; }

// Each sub-round reduces the currently larger parameter.
void zero_error_rounds(AmplificationPlan& plan, unsigned t, const std::string& phase) {
  for (unsigned round = 0; round < t; ++round)
    for (int sub = 0; sub < 2; ++sub) {
      const auto& w = plan.root();
      plan.push(reduce(w.p >= w.q ? StepKind::SReduce : StepKind::RReduce, 2), phase, {{"round", round + 1.0}});
    }
}

unsigned zero_error_t(double p, double q, unsigned k) {
  const double d = 1 - p - q;
  return static_cast<unsigned>(std::max(0.0, std::ceil(std::log2(std::log(2.0) * k / (d * d)))));
}

// The three-step round S-Reduce(R-Reduce(E-Reduce(F^3)^2)^2).
void core_round(AmplificationPlan& plan, unsigned round, const std::string& phase) {
  const std::map<std::string, double> sym{{"round", double(round)}};
  plan.push(reduce(StepKind::EReduce, 3), phase, sym);
  plan.push(reduce(StepKind::RReduce, 2), phase, sym);
  plan.push(reduce(StepKind::SReduce, 2), phase, sym);
}

const RegionTable& table(double offset) {
  static const RegionTable from_002 = region_iterate(kRegionResolution, 8, 0.02);
  static const RegionTable from_015 = region_iterate(kRegionResolution, 11, 0.15);
  return offset == 0.02 ? from_002 : from_015;
}

double slack(const RegionTable& t, unsigned level, const WotParams& w) { return t.lookup(level, w.p, w.q) - w.eps; }

// Walks the region tables down to p + q + 2 eps < offset, choosing at each
// state the step that leaves the most margin at the next lower level.
void descend(AmplificationPlan& plan, double offset, const std::string& phase) {
  const RegionTable& t = table(offset);
  for (unsigned guard = 0; guard < kDescentGuard; ++guard) {
    const WotParams w = plan.root();
    if (w.p + w.q + 2 * w.eps < offset) return;
    unsigned level = 0;
    for (unsigned i = 1; i <= t.rounds() && level == 0; ++i)
      if (w.eps < t.lookup(i, w.p, w.q)) level = i;
    if (level == 0) {
      plan.notes.push_back(phase + ": state outside the tabulated region, using the top level");
      level = t.rounds();
    }
    ReductionStep best{StepKind::SReduce, 2};
    double best_slack = -std::numeric_limits<double>::infinity();
    for (const auto& step : {reduce(StepKind::SReduce, 2), reduce(StepKind::RReduce, 2), reduce(StepKind::EReduce, 3)}) {
      const double s = slack(t, level - 1, algebra::apply(step, w));
      if (s > best_slack) {
        best_slack = s;
        best = step;
      }
    }
    plan.push(best, phase, {{"level", double(level)}});
  }
  refuse(RefusalKind::OutsideKnownRegion,
         phase + ": region descent did not reach p + q + 2 eps < " + fmt(offset) + " within the step guard");
}

bool in_box(const WotParams& w) {
  constexpr double box = 1.0 / 50;
  return w.p <= box && w.q <= box && w.eps <= box;
}

void core_loop(AmplificationPlan& plan, unsigned k) {
  const auto j = static_cast<unsigned>(
      std::max(0.0, std::ceil(std::log2(std::max(1u, k) / std::log2(50.0 / 36.0)))));
  plan.symbols["j"] = j;
  for (unsigned r = 1; r <= j; ++r) core_round(plan, r, "core");
  unsigned extra = 0;
  while (!plan.meets_target() && extra < 8) core_round(plan, j + ++extra, "core");
  if (extra) plan.notes.push_back("core loop needed " + std::to_string(extra) + " extra rounds");
}

}  // namespace

bool check_impossible(double p, double q, double eps) { return p + q + 2 * eps >= 1; }

AmplificationPlan plan_zero_error(double p, double q, unsigned k) {
  AmplificationPlan plan = start(p, q, 0, k);
  plan.theorem = "zero-error";
  const double d = 1 - p - q;
  plan.leaf_bound = 2.0 * k * k / (d * d * d * d);
  if (p == 0 && q == 0) {
    plan.symbols["t"] = 0;
    return plan;
  }
  const unsigned t = zero_error_t(p, q, k);
  plan.symbols["t"] = t;
  zero_error_rounds(plan, t, "squaring");
  unsigned extra = 0;
  while (!plan.meets_target() && extra < 8) zero_error_rounds(plan, 1, "squaring"), ++extra;
  if (extra) plan.notes.push_back("needed " + std::to_string(extra) + " rounds beyond t");
  return plan;
}

AmplificationPlan plan_one_sided(double p, double q, double eps, unsigned k) {
  AmplificationPlan plan = start(p, q, eps, k);
  plan.theorem = "one-sided";
  if (p != 0 && q != 0) refuse(RefusalKind::PremiseFailed, "one-sided schedule needs p = 0 or q = 0");
  // With p = 0 R-Reduce shrinks q and keeps p at 0; the mirror uses S-Reduce.
  const bool q_side = p == 0;
  const double x = q_side ? q : p;
  const StepKind shrink = q_side ? StepKind::RReduce : StepKind::SReduce;
  if (!(std::sqrt(x) + 2 * eps < 1))
    refuse(RefusalKind::PremiseFailed, "sqrt(" + std::string(q_side ? "q" : "p") + ") + 2 eps >= 1");
  if (p == 0 && q == 0 && eps == 0) return plan;

  const double alpha = 1 - 2 * eps;
  const double beta = std::max(x, alpha * alpha / 2);
  const double lambda = 1 / std::log2(alpha * alpha / beta);
  const unsigned s = count(std::ceil(5 * lambda), "s");
  const unsigned r = odd(count(std::ceil(1 / (4 * std::pow(beta, s))), "r"));
  plan.symbols["lambda"] = lambda;
  plan.symbols["beta"] = beta;
  plan.symbols["s"] = s;
  plan.symbols["r"] = r;
  plan.push(reduce(shrink, s), "constant", {{"s", double(s)}, {"lambda", lambda}});
  plan.push(reduce(StepKind::EReduce, r), "constant", {{"r", double(r)}, {"beta", beta}});
  const auto& mid = plan.root();
  if (!((q_side ? mid.q : mid.p) < 1.0 / 3 && mid.eps < 1.0 / 50))
    plan.notes.push_back("first phase misses the (1/3, 1/50) target");

  const double lk = k > 1 ? std::log2(double(k)) : 0;
  const unsigned ell = count(std::ceil(std::log2(4.0 * k + 4 * lk)), "ell");
  const unsigned m = odd(count(std::ceil(std::pow(3.0, ell) / 2), "m"));
  plan.symbols["ell"] = ell;
  plan.symbols["m"] = m;
  plan.push(reduce(shrink, ell), "amplify", {{"ell", double(ell)}});
  plan.push(reduce(StepKind::EReduce, m), "amplify", {{"m", double(m)}});
  plan.push(reduce(shrink, std::max(1u, k)), "amplify", {{"k", double(k)}});

  plan.leaf_bound = 128 * lambda / std::pow(alpha, 12 * lambda) * 116 * std::log2(20.0 * k) *
                    std::pow(double(k), std::log2(3.0) + 1);
  if (!plan.meets_target()) plan.notes.push_back("root misses the 2^-k target");
  return plan;
}

AmplificationPlan plan_general(double p, double q, double eps, unsigned k) {
  AmplificationPlan plan = start(p, q, eps, k);
  plan.leaf_bound = 175 * std::pow(double(std::max(1u, k)), 2 + std::log2(3.0));
  if (p == 0 && q == 0 && eps == 0) {
    plan.theorem = "identity";
    return plan;
  }
  const double sum = p + q + 2 * eps;
  if (in_box(plan.input)) {
    plan.theorem = "core-loop";
  } else if (sum <= kRegionGate) {
    plan.theorem = "region";
  } else if (p + 22 * q + 44 * eps < 1) {
    plan.theorem = "precondition-s";
    plan.push(reduce(StepKind::SReduce, count(std::ceil(std::log(20.0) / (1 - p)), "n")), "precondition");
  } else if (22 * p + q + 44 * eps < 1) {
    plan.theorem = "precondition-r";
    plan.push(reduce(StepKind::RReduce, count(std::ceil(std::log(20.0) / (1 - q)), "n")), "precondition");
  } else if (7 * std::sqrt(p + q) + 2 * eps < 1) {
    plan.theorem = "precondition-e";
    const double h = 0.5 - eps;
    plan.push(reduce(StepKind::EReduce, odd(count(std::ceil(std::log(50.0) / (2 * h * h)), "n"))), "precondition");
  } else if (std::pow(1 - p - q, 4) > -178 * std::log2(1 - 2 * eps)) {
    plan.theorem = "small-error";
    const unsigned t = zero_error_t(p, q, 5);
    plan.symbols["t"] = t;
    zero_error_rounds(plan, t, "squaring");
  } else {
    refuse(RefusalKind::OutsideKnownRegion,
           "(" + fmt(p) + ", " + fmt(q) + ", " + fmt(eps) + ") satisfies none of the admission predicates");
  }
  if (!in_box(plan.root())) {
    const auto& w = plan.root();
    if (w.p + w.q + 2 * w.eps > kRegionGate) plan.notes.push_back("preconditioning left p + q + 2 eps above 0.24");
    descend(plan, 0.15, "descent-0.15");
    descend(plan, 0.02, "descent-0.02");
  }
  core_loop(plan, k);
  return plan;
}

std::variant<AmplificationPlan, Refusal> plan(double p, double q, double eps, unsigned k) {
  try {
    AmplificationPlan id = start(p, q, eps, k);
    if (p == 0 && q == 0 && eps == 0) {
      id.theorem = "identity";
      return id;
    }
    if (eps == 0) return plan_zero_error(p, q, k);
    if (std::min(p, q) == 0 && std::sqrt(std::max(p, q)) + 2 * eps < 1) return plan_one_sided(p, q, eps, k);
    return plan_general(p, q, eps, k);
  } catch (const PlanRefused& r) {
    return r.refusal();
  }
}

}  // namespace otamp::planner
