// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "otamp/primitives/wot.hpp"
#include "otamp/reductions/logic.hpp"

namespace otamp::planner {

using primitives::WotParams;

// Closed-form parameter maps of the reduce protocols on n instances.
// Results carry UpperBound provenance.
namespace algebra {

WotParams r_reduce(const WotParams& in, unsigned n);
WotParams s_reduce(const WotParams& in, unsigned n);
WotParams e_reduce(const WotParams& in, unsigned n);  // n odd
WotParams rotor(const WotParams& in);
WotParams apply(const reductions::ReductionStep& step, const WotParams& in);

// 1 - (1 - x)^n, accurate for tiny x.
double one_minus_pow(double x, double n);
// Pr[Bin(n, eps) >= k].
double binomial_tail(unsigned n, unsigned k, double eps);

}  // namespace algebra

}  // namespace otamp::planner
