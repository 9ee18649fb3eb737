// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "otamp/primitives/wot.hpp"
#include "otamp/reductions/logic.hpp"

namespace otamp::reductions {

using primitives::WotSample;

// Apply a reduction to already sampled WOT instances. Output views nest the
// children's views together with their error bits and the messages the
// party saw, so the result can be fed to the estimators directly.
WotSample rotor_sample(const WotSample& s);
WotSample r_reduce_samples(const std::vector<WotSample>& in);
WotSample s_reduce_samples(const std::vector<WotSample>& in);
WotSample e_reduce_samples(const std::vector<WotSample>& in);
WotSample apply_step(const ReductionStep& step, const std::vector<WotSample>& in);

// Groups consecutive runs of step.arity() samples.
std::vector<WotSample> apply_step_batch(const ReductionStep& step, const std::vector<WotSample>& in);

}  // namespace otamp::reductions
