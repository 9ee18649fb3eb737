// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otamp/primitives/wot.hpp"
#include "otamp/reductions/logic.hpp"

namespace otamp::planner {

using primitives::WotParams;
using reductions::ReductionStep;

// One level of a homogeneous composition tree: `step` applied to
// step.arity() independent copies of the level below.
struct PlanNode {
  ReductionStep step;
  WotParams claimed;
  std::string phase;
  std::map<std::string, double> symbols;
};

struct AmplificationPlan {
  WotParams input;
  unsigned target_k = 0;
  std::vector<PlanNode> tree;  // leaves first
  std::string theorem;
  double leaf_bound = 0;  // simplified instance bound of the theorem, 0 if none
  std::map<std::string, double> symbols;
  std::vector<std::string> notes;

  // Product of arities; may exceed 2^53 for extreme inputs, then inexact.
  double leaf_count() const;
  const WotParams& root() const { return tree.empty() ? input : tree.back().claimed; }
  double target() const;
  bool meets_target() const;
  // Recomputes every claim with ParamAlgebra and checks leaf counts.
  void validate() const;

  void push(ReductionStep step, std::string phase, std::map<std::string, double> symbols = {});
};

enum class RefusalKind { Impossible, OutsideKnownRegion, PremiseFailed, TooLarge };
const char* refusal_name(RefusalKind k);

struct Refusal {
  RefusalKind kind;
  std::string reason;
};

class PlanRefused : public PreconditionError {
 public:
  explicit PlanRefused(Refusal r) : PreconditionError(r.reason), refusal_(std::move(r)) {}
  const Refusal& refusal() const { return refusal_; }

 private:
  Refusal refusal_;
};

// {target_k, input: {p, q, eps}, tree: [{kind, n, claimed: {p, q, eps}, ...}], leaf_count, theorem}
std::string to_json(const AmplificationPlan& plan, int indent = 2);
std::string to_json(const Refusal& r, int indent = 2);
// Parses a plan; a leaf_count that disagrees with the tree is an error.
AmplificationPlan plan_from_json(const std::string& text);

}  // namespace otamp::planner
