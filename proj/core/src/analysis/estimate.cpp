// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/estimate.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "otamp/common/errors.hpp"

namespace otamp::analysis {

using primitives::WotSample;

const char* method_name(Method m) {
  return m == Method::Exact ? "exact" : "monte_carlo_optimal_predictor";
}

double hoeffding_radius(std::uint64_t n, double delta) {
  if (n == 0) throw PreconditionError("hoeffding_radius: no samples");
  if (!(delta > 0 && delta < 1)) throw PreconditionError("hoeffding_radius: delta must lie in (0, 1)");
  return std::sqrt(std::log(2 / delta) / (2.0 * static_cast<double>(n)));
}

primitives::WotParams WotEstimate::params() const {
  primitives::WotParams w{p.value, q.value, eps.value, primitives::Provenance::Estimated, delta};
  return w;
}

namespace {

struct SplitResult {
  ParamEstimate est;
  double unseen = 0;
};

SplitResult split_estimate(const std::vector<WotSample>& batch, double delta,
                           const std::function<std::uint8_t(const WotSample&)>& target,
                           const std::function<const std::string&(const WotSample&)>& view) {
  const std::size_t half = batch.size() / 2;
  std::map<std::pair<std::string, std::uint8_t>, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (std::size_t i = 0; i < half; ++i) {
    auto& c = counts[{view(batch[i]), batch[i].e()}];
    (target(batch[i]) ? c.second : c.first) += 1;
  }
  std::uint64_t hits = 0, unseen = 0;
  const std::size_t n_eval = batch.size() - half;
  for (std::size_t i = half; i < batch.size(); ++i) {
    auto it = counts.find({view(batch[i]), batch[i].e()});
    std::uint8_t guess = 0;
    if (it == counts.end())
      ++unseen;
    else
      guess = it->second.second > it->second.first ? 1 : 0;
    hits += guess == target(batch[i]);
  }
  SplitResult r;
  const double rate = static_cast<double>(hits) / static_cast<double>(n_eval);
  r.unseen = static_cast<double>(unseen) / static_cast<double>(n_eval);
  r.est.value = std::clamp(2 * rate - 1, 0.0, 1.0);
  r.est.method = Method::MonteCarloOptimalPredictor;
  r.est.radius = 2 * hoeffding_radius(n_eval, delta) + 2 * r.unseen;
  return r;
}

}  // namespace

WotEstimate estimate_wot_params(const std::vector<WotSample>& batch, double delta, bool estimate_views) {
  if (batch.size() < 2) throw PreconditionError("estimate_wot_params: need at least two samples");
  WotEstimate out;
  out.trials = batch.size();
  out.delta = delta;
  out.views_estimated = estimate_views;

  std::uint64_t errors = 0;
  bool all_same = true;
  for (const auto& s : batch) {
    errors += s.e();
    all_same = all_same && s == batch.front();
  }
  out.eps = {static_cast<double>(errors) / static_cast<double>(batch.size()), Method::MonteCarloOptimalPredictor,
             hoeffding_radius(batch.size(), delta)};
  out.degenerate = all_same;
  if (all_same) out.notes.push_back("degenerate batch: all samples identical");

  if (!estimate_views) {
    out.p = out.q = {std::nan(""), Method::MonteCarloOptimalPredictor, std::nan("")};
    out.notes.push_back("view alphabet too large for p, q estimation; only eps estimated");
    return out;
  }
  const auto p = split_estimate(
      batch, delta, [](const WotSample& s) { return s.c; }, [](const WotSample& s) -> const std::string& { return s.u; });
  const auto q = split_estimate(
      batch, delta, [](const WotSample& s) { return s.x_other(); },
      [](const WotSample& s) -> const std::string& { return s.v; });
  out.p = p.est;
  out.q = q.est;
  if (p.unseen > 0.05 || q.unseen > 0.05) {
    out.alphabet_warning = true;
    out.notes.push_back("view alphabet large relative to trials; radius widened");
  }
  return out;
}

}  // namespace otamp::analysis
