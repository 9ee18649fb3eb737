// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otamp/analysis/marginal_wot.hpp"
#include "otamp/planner/plan.hpp"

namespace otamp::planner {

enum class ExecMode { Exact, MonteCarlo };
const char* exec_mode_name(ExecMode m);

struct ExecOptions {
  ExecMode mode = ExecMode::Exact;
  std::uint64_t trials = 2000;  // root instances in Monte Carlo mode
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double delta = 1e-3;
  double tol = 1e-9;  // exact-mode slack for measured <= claimed
  std::uint64_t cap = analysis::MarginalWot::kDefaultCap;
  std::uint64_t max_leaf_samples = std::uint64_t{1} << 21;
};

struct NodeResult {
  std::string name;  // step name, "leaf" for the source
  WotParams claimed;
  WotParams measured;
  double radius_p = 0, radius_q = 0, radius_eps = 0;
  bool ok = true;
};

struct ExecutionReport {
  ExecMode mode = ExecMode::Exact;
  std::uint64_t trials = 0;
  std::vector<NodeResult> nodes;  // leaf first, then one per tree level
  std::vector<std::string> notes;

  bool ok() const;
  const NodeResult& root() const { return nodes.back(); }
  std::string to_json(int indent = 2) const;
};

// Evaluates the tree bottom-up on instances drawn from `leaf`. Exact mode
// composes exact distributions; identical subtrees are computed once.
ExecutionReport execute_plan(const AmplificationPlan& plan, const primitives::WotSampler& leaf,
                             const ExecOptions& opt = {});
// Monte Carlo on supplied leaf instances; the batch size must be a
// multiple of the plan's leaf count.
ExecutionReport execute_plan_on_batch(const AmplificationPlan& plan, std::vector<primitives::WotSample> leaves,
                                      const ExecOptions& opt = {});

}  // namespace otamp::planner
