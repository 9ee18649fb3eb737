// SPDX-License-Identifier: Apache-2.0
#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "otamp/analysis/exact_wot.hpp"
#include "otamp/analysis/marginal_wot.hpp"
#include "otamp/analysis/uot_security.hpp"
#include "otamp/hashing/lhl.hpp"
#include "otamp/hashing/toeplitz.hpp"
#include "otamp/planner/param_algebra.hpp"
#include "otamp/prob/finite_dist.hpp"
#include "otamp/reductions/protocols.hpp"

namespace otamp::cli {

namespace {

using prob::FiniteDist;
using prob::JointBitDist;
using reductions::ReductionStep;
using reductions::StepKind;

JointBitDist<int> random_joint(std::mt19937_64& g, int ny) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<std::pair<std::uint8_t, int>, double>> e;
  double s = 0;
  for (int y = 0; y < ny; ++y)
    for (std::uint8_t x = 0; x < 2; ++x) {
      const double w = u(g);
      e.push_back({{x, y}, w});
      s += w;
    }
  for (auto& c : e) c.second /= s;
  return JointBitDist<int>(FiniteDist<std::pair<std::uint8_t, int>>(std::move(e), false));
}

CheckRow at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value <= bound};
}

SuiteResult prob_oracles(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<int> ny(1, 16);
  SuiteResult r{"prob-oracles", {}};
  double diff = 0, brute = 0;
  for (int i = 0; i < 200; ++i) {
    const auto j = random_joint(g, ny(g));
    diff = std::max(diff, std::abs(prob::pred_adv(j) - 2 * prob::distance_to_uniform_bit(j)));
  }
  r.rows.push_back(at_most("pred_adv = 2 Delta (200 joints)", diff, 1e-12));
  std::uniform_int_distribution<int> small(1, 8);
  for (int i = 0; i < 50; ++i) {
    const auto j = random_joint(g, small(g));
    double best = 0;
    const auto& rows = j.rows();
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << rows.size()); ++f) {
      double hit = 0;
      for (std::size_t k = 0; k < rows.size(); ++k) hit += ((f >> k) & 1) ? rows[k].p1 : rows[k].p0;
      best = std::max(best, 2 * hit - 1);
    }
    brute = std::max(brute, std::abs(best - prob::pred_adv(j)));
  }
  r.rows.push_back(at_most("pred_adv = best predictor (50 joints)", brute, 1e-12));
  double xor_slack = -1, or_slack = -1, event = 0;
  std::uniform_int_distribution<int> tiny(1, 4);
  for (int i = 0; i < 50; ++i) {
    std::vector<JointBitDist<int>> ds;
    for (int k = 0; k < 3; ++k) ds.push_back(random_joint(g, tiny(g)));
    const auto x = prob::xor_pred_bound_check(ds);
    const auto o = prob::or_pred_bound_check(ds);
    xor_slack = std::max(xor_slack, x.lhs - x.rhs);
    or_slack = std::max(or_slack, o.lhs - o.rhs);
    const auto d = prob::leakage_event_decompose(ds[0]);
    event = std::max({event, std::abs(d.pr_b1 - prob::pred_adv(ds[0])),
                      d.pr_b1 < 1 ? prob::pred_adv(d.given(0)) : 0.0});
  }
  r.rows.push_back(at_most("XOR bound lhs - rhs (50 triples)", xor_slack, 1e-12));
  r.rows.push_back(at_most("OR bound lhs - rhs (50 triples)", or_slack, 1e-12));
  r.rows.push_back(at_most("event decomposition residual", event, 1e-12));
  return r;
}

SuiteResult hash_lhl(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  SuiteResult r{"hash-lhl", {}};
  double worst = 0;
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = a + 1; b < 64; ++b) worst = std::max(worst, hashing::exact_collision_rate(6, 3, a, b));
  r.rows.push_back(at_most("Toeplitz 6->3 worst collision rate", worst, 1.0 / 8 + 1e-15));

  std::vector<std::uint64_t> all(256);
  for (std::uint64_t i = 0; i < 256; ++i) all[i] = i;
  const auto uni = hashing::EntropySource::single(FiniteDist<std::uint64_t>::uniform(all), 8, 8);
  const auto lu = hashing::lhl_verify(uni, 4, 0.25);
  r.rows.push_back(at_most("LHL uniform 8 -> 4, eps 1/4", lu.measured, lu.bound));

  std::shuffle(all.begin(), all.end(), g);
  const auto flat = hashing::EntropySource::single(
      FiniteDist<std::uint64_t>::uniform(std::vector<std::uint64_t>(all.begin(), all.begin() + 64)), 8, 6);
  const auto lf = hashing::lhl_verify(flat, 2, 0.25);
  r.rows.push_back(at_most("LHL flat 2^6 subset 8 -> 2, eps 1/4", lf.measured, lf.bound));

  std::vector<std::pair<hashing::EntropySource::Pair, double>> e;
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 16; ++y) e.push_back({{x, y}, 1.0 / 256});
  const auto pair = hashing::EntropySource::paired(FiniteDist<hashing::EntropySource::Pair>(std::move(e)), 4, 4, 4, 4, 8);
  const auto dl = hashing::distributed_lhl_verify(pair, 2, 2, 0.5);
  r.rows.push_back(at_most("distributed LHL uniform 4+4 -> 2+2, eps 1/2", dl.measured, dl.bound));
  return r;
}

SuiteResult reductions_exact(std::uint64_t) {
  SuiteResult r{"reductions-exact", {}};
  const primitives::WotParams leaf{0.1, 0.15, 0.05};
  const auto m = analysis::MarginalWot::from_sampler(primitives::event_model_sampler(leaf.p, leaf.q, leaf.eps));
  const auto full = analysis::ExactWot::from_sampler(primitives::event_model_sampler(leaf.p, leaf.q, leaf.eps));
  for (const auto& step : {ReductionStep{StepKind::RReduce, 2}, ReductionStep{StepKind::RReduce, 3},
                           ReductionStep{StepKind::SReduce, 2}, ReductionStep{StepKind::SReduce, 3},
                           ReductionStep{StepKind::EReduce, 3}}) {
    const auto got = analysis::MarginalWot::apply_power(step, m).measure();
    const auto want = planner::algebra::apply(step, leaf);
    const double d = std::max({std::abs(got.p - want.p), std::abs(got.q - want.q), std::abs(got.eps - want.eps)});
    r.rows.push_back(at_most(step.name() + " event model vs closed form", d, 1e-9));
    if (step.n == 2) {
      const auto f = analysis::ExactWot::apply(step, std::vector<analysis::ExactWot>(2, full)).measure();
      const double e = std::max({std::abs(got.p - f.p), std::abs(got.q - f.q), std::abs(got.eps - f.eps)});
      r.rows.push_back(at_most(step.name() + " marginal vs full joint", e, 1e-12));
    }
  }
  const double e3 = planner::algebra::e_reduce({0, 0, 0.1}, 3).eps;
  r.rows.push_back(at_most("E-Reduce(3) eps'(0.1) - 0.028", std::abs(e3 - 0.028), 1e-12));

  const auto sim = analysis::measure_wot_params(analysis::enumerate_sampler(primitives::simwot_sampler(0.25, 0.25)));
  r.rows.push_back(at_most("SimWOT(1/4, 1/4) |params - 1/4|",
                           std::max({std::abs(sim.p - 0.25), std::abs(sim.q - 0.25), std::abs(sim.eps - 0.25)}),
                           1e-12));

  double wrong = 0;
  engine::for_each_run(reductions::rotor_session(), [&](const engine::Transcript& t, double w) {
    const auto c = t.out(engine::Role::A, "c");
    const auto xc = t.out(engine::Role::B, c ? "x1" : "x0");
    if (xc != t.out(engine::Role::A, "y")) wrong += w;
  });
  r.rows.push_back(at_most("ROTOR Pr[x_c != y]", wrong, 0));
  return r;
}

SuiteResult uot_theorem(std::uint64_t seed) {
  SuiteResult r{"uot-theorem", {}};
  const double eps = 0.25, alpha = 8;
  std::mt19937_64 g(seed);
  std::vector<std::pair<std::string, primitives::UotAdversary>> cat;
  cat.emplace_back("uniform", primitives::UotAdversary::uniform(8));
  cat.emplace_back("x1 fixed", primitives::UotAdversary::fixed_bits(8, 0xff, 0));
  cat.emplace_back("x0 fixed", primitives::UotAdversary::fixed_bits(8, 0xff00, 0));
  cat.emplace_back("x1 = x0", primitives::UotAdversary::function_of(8, 0xff, [](std::uint64_t f) { return f << 8; }));
  std::uniform_int_distribution<std::uint64_t> word(0, 0xffff);
  std::vector<std::pair<std::uint64_t, double>> t;
  for (int i = 0; i < 256; ++i) t.push_back({word(g), 1.0 / 256});
  cat.emplace_back("random 256-point table", primitives::UotAdversary::table(8, FiniteDist<std::uint64_t>(std::move(t))));
  for (const auto& [name, adv] : cat) {
    const auto rep = analysis::uot_closeness(adv, alpha, 1, eps);
    r.rows.push_back(at_most("UOT closeness, " + name, rep.closeness, rep.bound));
  }
  const auto small = primitives::UotAdversary::fixed_bits(4, 0x3c, 0x81);
  const double fast = analysis::uot_closeness(small, 4, 1, eps).closeness;
  const double slow = analysis::uot_closeness_bruteforce(small, 4, 1, eps).closeness;
  r.rows.push_back(at_most("fast path vs enumeration (n = 4)", std::abs(fast - slow), 1e-12));
  return r;
}

}  // namespace

bool SuiteResult::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& c) { return c.ok; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"prob-oracles", "hash-lhl", "reductions-exact", "uot-theorem"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "prob-oracles") return prob_oracles(seed);
  if (name == "hash-lhl") return hash_lhl(seed);
  if (name == "reductions-exact") return reductions_exact(seed);
  if (name == "uot-theorem") return uot_theorem(seed);
  throw PreconditionError("unknown suite: " + name);
}

std::string render(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  char line[512];
  for (const auto& s : results) {
    for (const auto& c : s.rows) {
      std::snprintf(line, sizeof line, "%-17s %-48s %12.6g %12.6g  %s\n", s.suite.c_str(), c.name.c_str(), c.value,
                    c.bound, c.ok ? "PASS" : "FAIL");
      os << line;
    }
  }
  std::size_t pass = 0, total = 0;
  for (const auto& s : results)
    for (const auto& c : s.rows) total++, pass += c.ok;
  os << pass << "/" << total << " checks passed\n";
  return os.str();
}

}  // namespace otamp::cli
