// SPDX-License-Identifier: Apache-2.0
#include "otamp/planner/param_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

namespace otamp::planner::algebra {

using reductions::StepKind;

namespace {

WotParams bound(double p, double q, double eps) {
  auto clamp = [](double x) { return std::clamp(x, 0.0, 1.0); };
  return {clamp(p), clamp(q), clamp(eps), primitives::Provenance::UpperBound, 0};
}

void check(const WotParams& in, unsigned n) {
  in.validate();
  if (n == 0) throw PreconditionError("reduce needs n >= 1");
}

// (1 - (1 - 2 eps)^n) / 2
double xor_error(double eps, unsigned n) { return one_minus_pow(2 * eps, n) / 2; }

}  // namespace

double one_minus_pow(double x, double n) {
  if (x >= 1) return 1;
  if (x <= 0) return 0;
  return -std::expm1(n * std::log1p(-x));
}

double binomial_tail(unsigned n, unsigned k, double eps) {
  if (k == 0) return 1;
  if (k > n) return 0;
  if (eps <= 0) return 0;
  if (eps >= 1) return 1;
  // Pr[Bin(n, eps) >= k] = I_eps(k, n - k + 1).
  return boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), eps);
}

WotParams r_reduce(const WotParams& in, unsigned n) {
  check(in, n);
  return bound(one_minus_pow(in.p, n), std::pow(in.q, n), xor_error(in.eps, n));
}

WotParams s_reduce(const WotParams& in, unsigned n) {
  check(in, n);
  return bound(std::pow(in.p, n), one_minus_pow(in.q, n), xor_error(in.eps, n));
}

WotParams e_reduce(const WotParams& in, unsigned n) {
  check(in, n);
  if (n % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
  return bound(one_minus_pow(in.p, n), one_minus_pow(in.q, n), binomial_tail(n, (n + 1) / 2, in.eps));
}

WotParams rotor(const WotParams& in) {
  in.validate();
  return bound(in.q, in.p, in.eps);
}

WotParams apply(const reductions::ReductionStep& step, const WotParams& in) {
  step.validate();
  switch (step.kind) {
    case StepKind::RReduce: return r_reduce(in, step.n);
    case StepKind::SReduce: return s_reduce(in, step.n);
    case StepKind::EReduce: return e_reduce(in, step.n);
    case StepKind::Rotor: return rotor(in);
    default: throw PreconditionError(step.name() + " has no WOT parameter map");
  }
}

}  // namespace otamp::planner::algebra
