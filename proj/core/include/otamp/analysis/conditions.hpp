// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "otamp/analysis/measure.hpp"

namespace otamp::analysis {

// Side names the honest party whose security is checked.
enum class Side { A, B };

struct MaliciousConditionReport {
  double xor_gap = 0;  // Delta(X0 xor X1 | V, uniform); side A only
  double value = 0;    // the closeness the condition bounds
  bool ok = false;     // value <= eps
};

// Side A: B's transcript V. Builds C from the explicit conditional
// P(C=0 | x0, x1, v) = min(P(x0,0,v), P(x0,1,v)) / P(x0,x1,v) and reports
// Delta of X_{1-C} from uniform given (C, X_C, V).
MaliciousConditionReport check_rot_conditions_malicious(const XorJoint& x0x1v, double eps);
// Side B: A's transcript U. Reports Delta of C from uniform given U.
using ChoiceJoint = prob::FiniteDist<std::pair<std::uint8_t, std::string>>;  // (C, U)
MaliciousConditionReport check_rot_conditions_malicious(const ChoiceJoint& cu, double eps);
MaliciousConditionReport check_rot_conditions_malicious(const WotJoint& joint, Side side, double eps);

struct SemiHonestConditionReport {
  double correctness = 0;  // Delta(P_{X0 X1 C Y}, ideal ROT)
  double receiver = 0;     // Delta(X_{1-C} from uniform | C, Y, V)
  double sender = 0;       // Delta(C from uniform | X0, X1, U)
  double error = 0;        // 3 * max
  bool ok = false;         // max <= eps
};

SemiHonestConditionReport check_rot_conditions_semihonest(const WotJoint& joint, double eps);

}  // namespace otamp::analysis
