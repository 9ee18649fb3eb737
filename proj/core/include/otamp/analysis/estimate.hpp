// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otamp/primitives/wot.hpp"

namespace otamp::analysis {

enum class Method { Exact, MonteCarloOptimalPredictor };
const char* method_name(Method m);

struct ParamEstimate {
  double value = 0;
  Method method = Method::Exact;
  double radius = 0;  // half-width holding with probability >= 1 - delta
};

// sqrt(ln(2/delta) / (2n)): two-sided Hoeffding half-width for a mean of n bits.
double hoeffding_radius(std::uint64_t n, double delta);

struct WotEstimate {
  ParamEstimate eps, p, q;
  std::uint64_t trials = 0;
  double delta = 0;
  bool degenerate = false;        // every sample identical
  bool alphabet_warning = false;  // many evaluation views never seen in training
  bool views_estimated = true;
  std::vector<std::string> notes;

  primitives::WotParams params() const;
};

// eps counts errors over all samples. p and q fit the majority predictor
// per (view, e) on the first half and score it on the second half; the
// radius is doubled for the advantage scale and widened by twice the
// fraction of evaluation samples whose view was unseen in training.
WotEstimate estimate_wot_params(const std::vector<primitives::WotSample>& batch, double delta = 1e-3,
                                bool estimate_views = true);

}  // namespace otamp::analysis
