// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <tuple>

#include "otamp/engine/session.hpp"
#include "otamp/primitives/wot.hpp"
#include "otamp/prob/finite_dist.hpp"

namespace otamp::analysis {

using primitives::WotParams;
using primitives::WotSample;
using WotJoint = prob::FiniteDist<WotSample>;

// Exact joint of a sampler by walking every branch of its random tape.
WotJoint enumerate_sampler(const primitives::WotSampler& s, unsigned cap_bits = engine::kDefaultTapeCapBits);
// Exact joint of a reduce session; views are the parties' full auxiliary records.
WotJoint enumerate_wot_session(const engine::SessionSpec& spec, unsigned cap_bits = engine::kDefaultTapeCapBits);

// eps = Pr[Y != X_C], p = predadv(C | U, E), q = predadv(X_{1-C} | V, E).
WotParams measure_wot_params(const WotJoint& joint);

using XorJoint = prob::FiniteDist<std::tuple<std::uint8_t, std::uint8_t, std::string>>;  // (X0, X1, V)
// predadv(X0 xor X1 | V).
double xor_security_value(const XorJoint& joint);
double xor_security_value(const WotJoint& joint);
XorJoint xor_joint(const WotJoint& joint);

}  // namespace otamp::analysis
