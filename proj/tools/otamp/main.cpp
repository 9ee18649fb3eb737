// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "args.hpp"
#include "otamp/analysis/report.hpp"
#include "otamp/planner/execute.hpp"
#include "otamp/planner/region.hpp"
#include "otamp/planner/schedules.hpp"
#include "otamp/reductions/protocols.hpp"
#include "verify.hpp"

namespace {

using namespace otamp;

enum Exit { kOk = 0, kUsage = 1, kRefused = 2, kFailed = 3 };

std::string text_plan(const planner::AmplificationPlan& plan) {
  std::ostringstream os;
  os.precision(6);
  os << "theorem " << plan.theorem << "\n";
  os << "input   p=" << plan.input.p << " q=" << plan.input.q << " eps=" << plan.input.eps << "\n";
  os << "target  2^-" << plan.target_k << "\n";
  for (std::size_t i = 0; i < plan.tree.size(); ++i) {
    const auto& n = plan.tree[i];
    os << "  " << i + 1 << ". " << n.step.name() << "  [" << n.phase << "]  p=" << n.claimed.p << " q=" << n.claimed.q
       << " eps=" << n.claimed.eps << "\n";
  }
  os.precision(17);
  os << "leaves  " << plan.leaf_count() << "\n";
  os << "meets   " << (plan.meets_target() ? "yes" : "no") << "\n";
  for (const auto& note : plan.notes) os << "note    " << note << "\n";
  return os.str();
}

int cmd_plan(const std::string& p, const std::string& q, const std::string& eps, unsigned k,
             const std::string& output) {
  const auto result = planner::plan(cli::parse_probability(p), cli::parse_probability(q),
                                    cli::parse_probability(eps), k);
  if (const auto* r = std::get_if<planner::Refusal>(&result)) {
    std::cout << planner::to_json(*r) << "\n";
    return kRefused;
  }
  const auto& plan = std::get<planner::AmplificationPlan>(result);
  std::cout << (output == "text" ? text_plan(plan) : planner::to_json(plan) + "\n");
  return kOk;
}

engine::SessionSpec first_level_session(const planner::AmplificationPlan& plan, const primitives::WotSampler& leaf) {
  const auto& step = plan.tree.front().step;
  switch (step.kind) {
    case reductions::StepKind::RReduce: return reductions::r_reduce_session(step.n, leaf);
    case reductions::StepKind::SReduce: return reductions::s_reduce_session(step.n, leaf);
    case reductions::StepKind::EReduce: return reductions::e_reduce_session(step.n, leaf);
    default: throw PreconditionError("no session for " + step.name());
  }
}

int cmd_simulate(const std::string& plan_path, const std::string& source, const std::string& mode,
                 std::optional<std::uint64_t> seed, std::uint64_t trials, unsigned jobs,
                 const std::string& dump) {
  const auto plan = planner::plan_from_json(cli::read_file(plan_path));
  const auto src = cli::parse_source(source);
  planner::ExecOptions opt;
  opt.jobs = jobs;
  opt.trials = trials;
  if (mode == "exact") {
    opt.mode = planner::ExecMode::Exact;
  } else if (mode == "monte_carlo" || mode == "mc") {
    opt.mode = planner::ExecMode::MonteCarlo;
    if (!seed) throw PreconditionError("--seed is required for Monte Carlo simulation");
    opt.seed = *seed;
  } else {
    throw PreconditionError("unknown mode: " + mode);
  }
  if (!dump.empty()) {
    if (!seed) throw PreconditionError("--seed is required for --dump-transcript");
    if (src.kind == cli::SourceSpec::Kind::Batch) throw PreconditionError("--dump-transcript needs a generator source");
    const std::string text =
        plan.tree.empty() ? std::string() : engine::run(first_level_session(plan, src.sampler()), *seed).to_text();
    cli::write_file(dump, text);
  }
  planner::ExecutionReport rep;
  if (src.kind == cli::SourceSpec::Kind::Batch) {
    if (opt.mode == planner::ExecMode::Exact) throw PreconditionError("a batch source supports Monte Carlo mode only");
    rep = planner::execute_plan_on_batch(plan, primitives::parse_batch(cli::read_file(src.path)), opt);
  } else {
    rep = planner::execute_plan(plan, src.sampler(), opt);
  }
  std::cout << rep.to_json() << "\n";
  return rep.ok() ? kOk : kFailed;
}

int cmd_sample(const std::string& source, std::uint64_t count, std::uint64_t seed) {
  const auto src = cli::parse_source(source);
  std::cout << primitives::format_batch(primitives::sample_batch(src.sampler(), count, seed));
  return kOk;
}

int cmd_estimate(const std::string& path, double delta) {
  const auto batch = primitives::parse_batch(cli::read_file(path));
  std::cout << analysis::to_json(analysis::estimate_report(analysis::estimate_wot_params(batch, delta))) << "\n";
  return kOk;
}

int cmd_region(unsigned resolution, unsigned rounds, const std::string& offset, bool assert_paper) {
  const auto table = planner::region_iterate(resolution, rounds, cli::parse_probability(offset));
  std::cout << table.to_csv();
  if (!assert_paper) return kOk;
  bool ok = true;
  for (const auto& c : planner::region_checkpoints(resolution)) {
    std::cerr << "checkpoint target " << c.target_offset << " after " << c.rounds << " rounds: " << c.points
              << " points, " << c.failures << " failures, min slack " << c.min_slack << "\n";
    ok = ok && c.ok();
  }
  return ok ? kOk : kFailed;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<cli::SuiteResult> results;
  if (suite == "all") {
    for (const auto& name : cli::suite_names()) results.push_back(cli::run_suite(name, seed));
  } else {
    results.push_back(cli::run_suite(suite, seed));
  }
  std::cout << cli::render(results);
  for (const auto& r : results)
    if (!r.ok()) return kFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oblivious-transfer amplification laboratory"};
  app.require_subcommand(1);
  int code = kOk;

  std::string p = "0", q = "0", eps = "0", output = "json";
  unsigned k = 5;
  auto* plan = app.add_subcommand("plan", "Synthesize an amplification plan");
  plan->add_option("--p", p, "Sender-side leak probability")->required();
  plan->add_option("--q", q, "Receiver-side leak probability")->required();
  plan->add_option("--eps", eps, "Error probability")->required();
  plan->add_option("--k", k, "Target 2^-k")->capture_default_str();
  plan->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string plan_path, source, mode = "exact", dump;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 2000;
  unsigned jobs = 1;
  auto* sim = app.add_subcommand("simulate", "Execute a plan and compare measured with claimed parameters");
  sim->add_option("--plan", plan_path, "Plan JSON file")->required();
  sim->add_option("--source", source, "event:p,q,eps | simwot:p,q | batch:<file>")->required();
  sim->add_option("--mode", mode, "exact or monte_carlo")->capture_default_str();
  sim->add_option("--seed", seed, "Seed for stochastic modes");
  sim->add_option("--trials", trials, "Root instances in Monte Carlo mode")->capture_default_str();
  sim->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  sim->add_option("--dump-transcript", dump, "Write one seeded run of the first level in log line format");

  std::string sample_source;
  std::uint64_t count = 1000, sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "Draw a WOT batch");
  sample->add_option("--source", sample_source, "event:p,q,eps | simwot:p,q")->required();
  sample->add_option("--count", count)->capture_default_str();
  sample->add_option("--seed", sample_seed)->required();

  std::string batch_path;
  double delta = 1e-3;
  auto* est = app.add_subcommand("estimate", "Estimate WOT parameters of a batch");
  est->add_option("--batch", batch_path, "Batch file")->required();
  est->add_option("--delta", delta, "Failure probability")->check(CLI::Range(1e-12, 0.5))->capture_default_str();

  unsigned resolution = 128, rounds = 8;
  std::string offset = "0.02";
  bool assert_paper = false;
  auto* region = app.add_subcommand("region", "Iterate the achievable-region bound on a grid");
  region->add_option("--resolution", resolution)->check(CLI::Range(64u, 4096u))->capture_default_str();
  region->add_option("--rounds", rounds)->capture_default_str();
  region->add_option("--offset", offset, "Seed offset of l_0")->capture_default_str();
  region->add_flag("--assert-paper", assert_paper, "Enforce both published checkpoints");

  std::string suite = "all";
  std::uint64_t verify_seed = 0;
  auto* ver = app.add_subcommand("verify", "Run oracle suites");
  ver->add_option("--suite", suite, "prob-oracles | hash-lhl | reductions-exact | uot-theorem | all")
      ->capture_default_str();
  ver->add_option("--seed", verify_seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*plan) code = cmd_plan(p, q, eps, k, output);
    else if (*sim) code = cmd_simulate(plan_path, source, mode, seed, trials, jobs, dump);
    else if (*sample) code = cmd_sample(sample_source, count, sample_seed);
    else if (*est) code = cmd_estimate(batch_path, delta);
    else if (*region) code = cmd_region(resolution, rounds, offset, assert_paper);
    else if (*ver) code = cmd_verify(suite, verify_seed);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
