// SPDX-License-Identifier: Apache-2.0
#include "otamp/reductions/batch.hpp"

#include "otamp/common/errors.hpp"

namespace otamp::reductions {

namespace {

std::string bitstr(const Bits& b) {
  std::string s;
  for (auto x : b) s.push_back(static_cast<char>('0' + x));
  return s;
}

std::string nest(char tag, const std::vector<WotSample>& in, bool sender_side, const std::string& msgs) {
  std::string s(1, tag);
  s += '(';
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i) s += ',';
    s += sender_side ? in[i].u : in[i].v;
    s += 'e';
    s += static_cast<char>('0' + in[i].e());
  }
  if (!msgs.empty()) {
    s += ';';
    s += msgs;
  }
  s += ')';
  return s;
}

struct Columns {
  Bits x0, x1, c, y;
  explicit Columns(const std::vector<WotSample>& in) {
    for (const auto& s : in) {
      x0.push_back(s.x0);
      x1.push_back(s.x1);
      c.push_back(s.c);
      y.push_back(s.y);
    }
  }
};

}  // namespace

WotSample rotor_sample(const WotSample& s) {
  WotSample o;
  std::tie(o.c, o.y) = rotor::from_sender(s.x0, s.x1);
  std::tie(o.x0, o.x1) = rotor::from_receiver(s.c, s.y);
  o.u = "O(" + s.v + ")";
  o.v = "O(" + s.u + ")";
  return o;
}

WotSample r_reduce_samples(const std::vector<WotSample>& in) {
  if (in.empty()) throw PreconditionError("R-Reduce needs n >= 1");
  if (in.size() == 1) return in[0];
  const Columns k(in);
  const Bits d = rreduce::directions(k.c);
  WotSample o;
  std::tie(o.x0, o.x1) = rreduce::sender_output(k.x0, k.x1, d);
  o.c = k.c.back();
  o.y = rreduce::receiver_output(k.y);
  o.u = nest('R', in, true, "d" + bitstr(Bits(d.begin(), d.end() - 1)));
  o.v = nest('R', in, false, "");
  return o;
}

WotSample s_reduce_samples(const std::vector<WotSample>& in) {
  std::vector<WotSample> flipped;
  flipped.reserve(in.size());
  for (const auto& s : in) flipped.push_back(rotor_sample(s));
  return rotor_sample(r_reduce_samples(flipped));
}

WotSample e_reduce_samples(const std::vector<WotSample>& in) {
  if (in.empty() || in.size() % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
  if (in.size() == 1) return in[0];
  const Columns k(in);
  const Bits d = ereduce::directions(k.c);
  const auto [s0, s1] = ereduce::masks(k.x0, k.x1, d);
  WotSample o;
  o.x0 = k.x0.back();
  o.x1 = k.x1.back();
  o.c = k.c.back();
  o.y = ereduce::decode(k.y, s0, s1, o.c);
  const std::string dstr = "d" + bitstr(Bits(d.begin(), d.end() - 1));
  o.u = nest('E', in, true, dstr);
  o.v = nest('E', in, false, "s" + bitstr(s0) + ":" + bitstr(s1));
  return o;
}

WotSample apply_step(const ReductionStep& step, const std::vector<WotSample>& in) {
  step.validate();
  if (in.size() != step.arity())
    throw PreconditionError(step.name() + " expects " + std::to_string(step.arity()) + " instances, got " +
                            std::to_string(in.size()));
  switch (step.kind) {
    case StepKind::Rotor: return rotor_sample(in[0]);
    case StepKind::RReduce: return r_reduce_samples(in);
    case StepKind::SReduce: return s_reduce_samples(in);
    case StepKind::EReduce: return e_reduce_samples(in);
    default: throw PreconditionError(step.name() + " does not act on WOT samples");
  }
}

std::vector<WotSample> apply_step_batch(const ReductionStep& step, const std::vector<WotSample>& in) {
  const std::size_t a = step.arity();
  if (in.size() % a) throw PreconditionError("batch size not a multiple of the step arity");
  std::vector<WotSample> out;
  out.reserve(in.size() / a);
  for (std::size_t i = 0; i < in.size(); i += a)
    out.push_back(apply_step(step, std::vector<WotSample>(in.begin() + i, in.begin() + i + a)));
  return out;
}

}  // namespace otamp::reductions
