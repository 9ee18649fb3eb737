// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otamp/analysis/conditions.hpp"
#include "otamp/analysis/estimate.hpp"

namespace otamp::analysis {

struct Report {
  primitives::WotParams params;
  Method method = Method::Exact;
  double radius_eps = 0, radius_p = 0, radius_q = 0;
  std::optional<SemiHonestConditionReport> semi_honest;
  std::optional<MaliciousConditionReport> malicious_a;
  std::optional<MaliciousConditionReport> malicious_b;
  std::vector<std::string> notes;
};

// Exact parameters plus all condition checks at tolerance eps.
Report exact_report(const WotJoint& joint, double eps);
Report estimate_report(const WotEstimate& e);

// {"epsilon", "p", "q", "method", "radius": {...}, "conditions": {...}}
std::string to_json(const Report& r, int indent = 2);

}  // namespace otamp::analysis
