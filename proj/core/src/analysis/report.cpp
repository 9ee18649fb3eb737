// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/report.hpp"

#include <cmath>

#include "json.hpp"

namespace otamp::analysis {

using nlohmann::json;

Report exact_report(const WotJoint& joint, double eps) {
  Report r;
  r.params = measure_wot_params(joint);
  r.method = Method::Exact;
  r.semi_honest = check_rot_conditions_semihonest(joint, eps);
  r.malicious_a = check_rot_conditions_malicious(joint, Side::A, eps);
  r.malicious_b = check_rot_conditions_malicious(joint, Side::B, eps);
  return r;
}

Report estimate_report(const WotEstimate& e) {
  Report r;
  r.params = e.params();
  r.method = Method::MonteCarloOptimalPredictor;
  r.radius_eps = e.eps.radius;
  r.radius_p = e.p.radius;
  r.radius_q = e.q.radius;
  r.notes = e.notes;
  return r;
}

namespace {
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
}  // namespace

std::string to_json(const Report& r, int indent) {
  json j;
  j["epsilon"] = num(r.params.eps);
  j["p"] = num(r.params.p);
  j["q"] = num(r.params.q);
  j["method"] = method_name(r.method);
  j["radius"] = {{"epsilon", num(r.radius_eps)}, {"p", num(r.radius_p)}, {"q", num(r.radius_q)}};
  json c = json::object();
  if (r.semi_honest) {
    const auto& s = *r.semi_honest;
    c["semi_honest"] = {{"correctness", s.correctness}, {"receiver", s.receiver}, {"sender", s.sender},
                        {"error_bound", s.error}, {"ok", s.ok}};
  }
  if (r.malicious_a)
    c["malicious_a"] = {{"xor_gap", r.malicious_a->xor_gap}, {"value", r.malicious_a->value},
                        {"ok", r.malicious_a->ok}};
  if (r.malicious_b) c["malicious_b"] = {{"value", r.malicious_b->value}, {"ok", r.malicious_b->ok}};
  j["conditions"] = c;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j.dump(indent);
}

}  // namespace otamp::analysis
