// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <variant>

#include "otamp/planner/plan.hpp"

namespace otamp::planner {

// No protocol from basic reductions exists when p + q + 2 eps >= 1.
bool check_impossible(double p, double q, double eps);

// eps = 0: t rounds of two 2-instance S-/R-Reduce steps, each on the larger parameter.
AmplificationPlan plan_zero_error(double p, double q, unsigned k);
// p = 0 or q = 0 with sqrt(other) + 2 eps < 1.
AmplificationPlan plan_one_sided(double p, double q, double eps, unsigned k);
// Preconditioning, descent through the region tables and the SRE core loop.
AmplificationPlan plan_general(double p, double q, double eps, unsigned k);

// Picks the applicable schedule; refusals carry their kind.
std::variant<AmplificationPlan, Refusal> plan(double p, double q, double eps, unsigned k);

}  // namespace otamp::planner
