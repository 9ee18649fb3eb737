// SPDX-License-Identifier: Apache-2.0
#include "otamp/engine/session.hpp"

#include <cmath>

namespace otamp::engine {

void PartyTask::resume() {
  h_.resume();
  if (h_.promise().error) std::rethrow_exception(std::exchange(h_.promise().error, nullptr));
}

CorruptionMode CorruptionMode::semi_honest(Role r) {
  CorruptionMode m;
  (r == Role::A ? m.a : m.b) = Behaviour::SemiHonest;
  return m;
}

CorruptionMode CorruptionMode::semi_honest_both() {
  CorruptionMode m;
  m.a = m.b = Behaviour::SemiHonest;
  return m;
}

CorruptionMode CorruptionMode::malicious(Role r, PartyProgram strategy) {
  CorruptionMode m;
  if (r == Role::A) {
    m.a = Behaviour::Malicious;
    m.strategy_a = std::move(strategy);
  } else {
    m.b = Behaviour::Malicious;
    m.strategy_b = std::move(strategy);
  }
  return m;
}

void FunctionalityContext::deliver(Role to, Bytes payload) {
  s_.post("F:" + slot_, to, slot_, std::move(payload));
}

RandomSource& FunctionalityContext::rng() { return *s_.rng_f_; }

const CorruptionMode& FunctionalityContext::corruption() const { return s_.spec_.corruption; }

View& PartyContext::view() { return role_ == Role::A ? s_.t_.u : s_.t_.v; }

void PartyContext::send(std::string_view channel, Bytes payload) {
  view().add(View::Kind::Sent, std::string(channel), to_hex(payload));
  s_.route(role_, channel, std::move(payload));
}

bool PartyContext::has(const std::string& channel) const {
  auto it = inbox_.find(channel);
  return it != inbox_.end() && !it->second.empty();
}

Bytes PartyContext::pop(const std::string& channel) {
  auto& q = inbox_.at(channel);
  Bytes b = std::move(q.front());
  q.pop_front();
  waiting_.clear();
  view().add(View::Kind::Received, channel, to_hex(b));
  return b;
}

std::uint64_t PartyContext::uniform(std::uint64_t n, std::string_view label) {
  auto& src = role_ == Role::A ? *s_.rng_a_ : *s_.rng_b_;
  const auto v = src.uniform(n);
  view().add(View::Kind::Random, std::string(label), std::to_string(v));
  return v;
}

bool PartyContext::bernoulli(double p, std::string_view label) {
  auto& src = role_ == Role::A ? *s_.rng_a_ : *s_.rng_b_;
  const bool v = src.bernoulli(p);
  view().add(View::Kind::Random, std::string(label), v ? "1" : "0");
  return v;
}

std::uint64_t PartyContext::bits(unsigned k, std::string_view label) {
  auto& src = role_ == Role::A ? *s_.rng_a_ : *s_.rng_b_;
  const auto v = src.bits(k);
  view().add(View::Kind::Random, std::string(label), std::to_string(v));
  return v;
}

void PartyContext::input(std::string_view label, std::uint64_t value) {
  view().add(View::Kind::Input, std::string(label), std::to_string(value));
}

void PartyContext::aux(std::string_view label, std::string value) {
  view().add(View::Kind::Aux, std::string(label), std::move(value));
}

void PartyContext::output(std::string_view label, std::uint64_t value) {
  view().add(View::Kind::Output, std::string(label), std::to_string(value));
  (role_ == Role::A ? s_.t_.out_a : s_.t_.out_b)[std::string(label)] = value;
}

Session::Session(const SessionSpec& spec, RandomSource& party_a, RandomSource& party_b,
                 RandomSource& functionalities)
    : spec_(spec),
      rng_a_(&party_a),
      rng_b_(&party_b),
      rng_f_(&functionalities),
      ctx_a_(*this, Role::A),
      ctx_b_(*this, Role::B) {
  for (const auto& [name, make] : spec.slots) {
    if (name == kComm || name.empty()) throw PreconditionError("reserved slot name: " + name);
    if (slots_.count(name)) throw PreconditionError("duplicate slot: " + name);
    slots_[name] = make();
    fx_[name] = std::unique_ptr<FunctionalityContext>(new FunctionalityContext(*this, name));
  }
}

void Session::post(const std::string& from_tag, Role to, const std::string& channel, Bytes payload) {
  t_.log.push_back({from_tag + ">" + role_name(to), step_++, payload});
  (to == Role::A ? ctx_a_ : ctx_b_).inbox_[channel].push_back(std::move(payload));
}

void Session::route(Role from, std::string_view channel, Bytes payload) {
  if (channel == kComm) {
    post(role_name(from), other(from), std::string(kComm), std::move(payload));
    return;
  }
  auto it = slots_.find(std::string(channel));
  if (it == slots_.end()) throw ProtocolError("no such slot: " + std::string(channel));
  t_.log.push_back({std::string(role_name(from)) + ">F:" + it->first, step_++, payload});
  if (++depth_ > 64) throw ProtocolError("functionality recursion");
  it->second->on_input(from, payload, *fx_.at(it->first));
  --depth_;
}

Transcript Session::run() {
  const auto& cm = spec_.corruption;
  const PartyProgram& pa = cm.malicious(Role::A) ? cm.strategy_a : spec_.a;
  const PartyProgram& pb = cm.malicious(Role::B) ? cm.strategy_b : spec_.b;
  if (!pa || !pb) throw PreconditionError("session needs both party programs");
  t_.u_exposed = cm.corrupt(Role::A);
  t_.v_exposed = cm.corrupt(Role::B);

  PartyTask ta = pa(ctx_a_);
  PartyTask tb = pb(ctx_b_);
  bool started_a = false, started_b = false;
  auto ready = [](const PartyTask& t, const PartyContext& c, bool started) {
    if (!t.valid() || (started && t.done())) return false;
    return !started || c.has(c.waiting_);
  };
  for (;;) {
    bool progressed = false;
    if (ready(ta, ctx_a_, started_a)) {
      started_a = true;
      ta.resume();
      progressed = true;
    }
    if (ready(tb, ctx_b_, started_b)) {
      started_b = true;
      tb.resume();
      progressed = true;
    }
    const bool done_a = !ta.valid() || ta.done();
    const bool done_b = !tb.valid() || tb.done();
    if (done_a && done_b) break;
    if (!progressed) {
      std::string who = !done_a ? "A awaits '" + ctx_a_.waiting_ + "'" : "";
      if (!done_b) who += std::string(who.empty() ? "" : ", ") + "B awaits '" + ctx_b_.waiting_ + "'";
      throw DeadlockError("deadlock: " + who);
    }
  }
  return std::move(t_);
}

Transcript run(const SessionSpec& spec, std::uint64_t seed) {
  Rng a(derive_seed(seed, "party:A"));
  Rng b(derive_seed(seed, "party:B"));
  Rng f(derive_seed(seed, "functionalities"));
  Session s(spec, a, b, f);
  return s.run();
}

std::uint64_t TapeSource::draw(std::uint64_t count, double p) {
  if (pos_ < path_.size()) {
    const auto& d = path_[pos_++];
    if (d.count != count || d.p != p) throw ProtocolError("tape replay diverged: protocol not deterministic");
    weight_ *= p < 0 ? 1.0 / static_cast<double>(count) : (d.choice ? p : 1 - p);
    return d.choice;
  }
  bits_used_ += p < 0 ? std::log2(static_cast<double>(count)) : 1.0;
  if (bits_used_ > cap_bits_ + 1e-9)
    throw CapExceeded("enumeration tape exceeds " + std::to_string(cap_bits_) + " bits");
  path_.push_back({0, count, p});
  ++pos_;
  weight_ *= p < 0 ? 1.0 / static_cast<double>(count) : 1 - p;
  return 0;
}

std::uint64_t TapeSource::uniform(std::uint64_t n) {
  if (n == 0) throw PreconditionError("uniform(0)");
  if (n == 1) return 0;
  return draw(n, -1);
}

bool TapeSource::bernoulli(double p) {
  if (!(p >= 0 && p <= 1)) throw PreconditionError("bernoulli: p outside [0,1]");
  if (p == 0) return false;
  if (p == 1) return true;
  return draw(2, p) != 0;
}

std::uint64_t TapeSource::bits(unsigned k) {
  if (k > 63) throw CapExceeded("tape draw of more than 63 bits");
  return k == 0 ? 0 : uniform(std::uint64_t{1} << k);
}

bool TapeSource::advance() {
  while (!path_.empty() && path_.back().choice + 1 == path_.back().count) path_.pop_back();
  pos_ = 0;
  weight_ = 1;
  if (path_.empty()) return false;
  ++path_.back().choice;
  bits_used_ = 0;
  for (const auto& d : path_) bits_used_ += d.p < 0 ? std::log2(static_cast<double>(d.count)) : 1.0;
  return true;
}

void for_each_run(const SessionSpec& spec, const std::function<void(const Transcript&, double)>& f,
                  unsigned cap_bits) {
  TapeSource tape(cap_bits);
  do {
    Session s(spec, tape, tape, tape);
    const Transcript t = s.run();
    f(t, tape.weight());
  } while (tape.advance());
}

void monte_carlo_runs(const SessionSpec& spec, std::uint64_t trials, std::uint64_t seed,
                      const std::function<void(const Transcript&, std::uint64_t)>& f) {
  if (trials == 0) throw PreconditionError("monte_carlo_runs: trials must be >= 1");
  for (std::uint64_t i = 0; i < trials; ++i) f(run(spec, derive_seed(seed, i)), i);
}

}  // namespace otamp::engine
