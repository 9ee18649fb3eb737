// SPDX-License-Identifier: Apache-2.0
#include "otamp/planner/execute.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "otamp/analysis/estimate.hpp"
#include "otamp/analysis/marginal_wot.hpp"
#include "otamp/reductions/batch.hpp"

namespace otamp::planner {

using analysis::MarginalWot;
using primitives::WotSample;

namespace {

bool below(const WotParams& m, const WotParams& c, double rp, double rq, double re, double tol) {
  return m.p - rp <= c.p + tol && m.q - rq <= c.q + tol && m.eps - re <= c.eps + tol;
}

NodeResult exact_node(std::string name, const WotParams& claimed, const MarginalWot& w, double tol) {
  NodeResult r{std::move(name), claimed, w.measure()};
  r.ok = below(r.measured, claimed, 0, 0, 0, tol);
  return r;
}

NodeResult estimated_node(std::string name, const WotParams& claimed, const std::vector<WotSample>& batch,
                          const ExecOptions& opt) {
  const auto est = analysis::estimate_wot_params(batch, opt.delta);
  NodeResult r{std::move(name), claimed, est.params()};
  r.radius_p = est.p.radius;
  r.radius_q = est.q.radius;
  r.radius_eps = est.eps.radius;
  r.ok = below(r.measured, claimed, r.radius_p, r.radius_q, r.radius_eps, 0);
  return r;
}

// Runs f(begin, end) over [0, n) in `jobs` contiguous shards.
template <class F>
void sharded(std::uint64_t n, unsigned jobs, F f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(n, 64))));
  if (jobs <= 1) {
    f(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (n + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t b = j * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back([=] { f(b, e); });
  }
  for (auto& t : pool) t.join();
}

std::uint64_t leaf_count_exact(const AmplificationPlan& plan) {
  const double n = plan.leaf_count();
  if (n > 9007199254740992.0) throw CapExceeded("plan leaf count too large to execute");
  return static_cast<std::uint64_t>(n);
}

ExecutionReport run_batch(const AmplificationPlan& plan, std::vector<WotSample> cur, std::uint64_t trials,
                          const ExecOptions& opt) {
  ExecutionReport rep;
  rep.mode = ExecMode::MonteCarlo;
  rep.trials = trials;
  rep.nodes.push_back(estimated_node("leaf", plan.input, cur, opt));
  for (const auto& node : plan.tree) {
    const unsigned a = node.step.arity();
    const std::uint64_t groups = cur.size() / a;
    std::vector<WotSample> next(groups);
    sharded(groups, opt.jobs, [&](std::uint64_t b, std::uint64_t e) {
      for (std::uint64_t g = b; g < e; ++g) {
        std::vector<WotSample> in(cur.begin() + g * a, cur.begin() + (g + 1) * a);
        next[g] = reductions::apply_step(node.step, in);
      }
    });
    cur = std::move(next);
    if (cur.size() < 2) {
      rep.notes.push_back(node.step.name() + ": fewer than two samples, not estimated");
      rep.nodes.push_back({node.step.name(), node.claimed, node.claimed, 1, 1, 1, true});
      continue;
    }
    rep.nodes.push_back(estimated_node(node.step.name(), node.claimed, cur, opt));
  }
  return rep;
}

}  // namespace

const char* exec_mode_name(ExecMode m) { return m == ExecMode::Exact ? "exact" : "monte_carlo"; }

bool ExecutionReport::ok() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeResult& n) { return n.ok; });
}

std::string ExecutionReport::to_json(int indent) const {
  using nlohmann::ordered_json;
  const auto params = [](const WotParams& w) { return ordered_json{{"p", w.p}, {"q", w.q}, {"eps", w.eps}}; };
  ordered_json j;
  j["mode"] = exec_mode_name(mode);
  if (mode == ExecMode::MonteCarlo) j["trials"] = trials;
  ordered_json nodes = ordered_json::array();
  for (const auto& n : this->nodes) {
    ordered_json o{{"step", n.name}, {"claimed", params(n.claimed)}, {"measured", params(n.measured)}};
    if (mode == ExecMode::MonteCarlo) o["radius"] = {{"p", n.radius_p}, {"q", n.radius_q}, {"eps", n.radius_eps}};
    o["ok"] = n.ok;
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  j["ok"] = ok();
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(indent);
}

ExecutionReport execute_plan(const AmplificationPlan& plan, const primitives::WotSampler& leaf, const ExecOptions& opt) {
  plan.validate();
  if (opt.mode == ExecMode::Exact) {
    ExecutionReport rep;
    rep.mode = ExecMode::Exact;
    MarginalWot cur = MarginalWot::from_sampler(leaf);
    rep.nodes.push_back(exact_node("leaf", plan.input, cur, opt.tol));
    for (const auto& node : plan.tree) {
      // Every child of a level is the same subtree, so compose one copy.
      cur = MarginalWot::apply_power(node.step, cur, opt.cap);
      rep.nodes.push_back(exact_node(node.step.name(), node.claimed, cur, opt.tol));
    }
    return rep;
  }
  if (opt.trials < 2) throw PreconditionError("Monte Carlo execution needs at least two trials");
  const std::uint64_t leaves = leaf_count_exact(plan);
  if (static_cast<long double>(leaves) * opt.trials > opt.max_leaf_samples)
    throw CapExceeded("Monte Carlo execution needs " + std::to_string(leaves) + " x " + std::to_string(opt.trials) +
                      " leaf instances, above the configured cap");
  std::vector<WotSample> batch(leaves * opt.trials);
  sharded(opt.trials, opt.jobs, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t t = b; t < e; ++t) {
      engine::Rng rng(engine::derive_seed(opt.seed, t));
      for (std::uint64_t i = 0; i < leaves; ++i) batch[t * leaves + i] = leaf(rng);
    }
  });
  return run_batch(plan, std::move(batch), opt.trials, opt);
}

ExecutionReport execute_plan_on_batch(const AmplificationPlan& plan, std::vector<WotSample> leaves,
                                      const ExecOptions& opt) {
  plan.validate();
  const std::uint64_t n = leaf_count_exact(plan);
  if (leaves.empty() || leaves.size() % n != 0)
    throw PreconditionError("leaf batch of " + std::to_string(leaves.size()) + " is not a multiple of the plan's " +
                            std::to_string(n) + " leaves");
  const std::uint64_t trials = leaves.size() / n;
  return run_batch(plan, std::move(leaves), trials, opt);
}

}  // namespace otamp::planner
