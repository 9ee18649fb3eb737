// SPDX-License-Identifier: Apache-2.0
#include "otamp/primitives/wot.hpp"

#include <algorithm>
#include <sstream>

namespace otamp::primitives {

using engine::Bytes;
using engine::PartyContext;
using engine::PartyTask;
using engine::Reader;
using engine::Role;
using engine::Writer;

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::UpperBound: return "upper_bound";
    case Provenance::Estimated: return "estimated";
  }
  return "?";
}

void WotParams::validate() const {
  for (double x : {p, q, eps})
    if (!(x >= 0 && x <= 1)) throw PreconditionError("WOT parameters must lie in [0, 1]");
}

namespace {

void check_pq(double p, double q) {
  if (!(p >= 0 && q >= 0 && p <= 1 && q <= 1)) throw PreconditionError("p, q must lie in [0, 1]");
  if (p + q > 1 + 1e-15) throw PreconditionError("SimWOT needs p + q <= 1");
}

std::string bits2(int a, int b) { return {static_cast<char>('0' + a), static_cast<char>('0' + b)}; }

}  // namespace

WotSample simwot_sample(double p, double q, engine::RandomSource& rng) {
  check_pq(p, q);
  WotSample s;
  const auto a0 = static_cast<std::uint8_t>(rng.uniform(2));
  const auto a1 = static_cast<std::uint8_t>(rng.uniform(2));
  const bool send_a = rng.bernoulli(q);
  const auto c = static_cast<std::uint8_t>(rng.uniform(2));
  const auto y = static_cast<std::uint8_t>(rng.uniform(2));
  s.x0 = a0;
  s.x1 = a1;
  s.c = c;
  if (send_a) {
    s.y = c ? a1 : a0;
    s.u = "x" + bits2(s.x0, s.x1) + ":-";
    s.v = "c" + bits2(s.c, s.y) + ":a" + bits2(a0, a1);
    return s;
  }
  const bool send_b = q < 1 && rng.bernoulli(std::min(1.0, p / (1 - q)));
  s.y = y;
  if (send_b) (c ? s.x1 : s.x0) = y;
  s.u = "x" + bits2(s.x0, s.x1) + (send_b ? ":b" + bits2(c, y) : std::string(":-"));
  s.v = "c" + bits2(s.c, s.y) + ":-";
  return s;
}

WotSample event_model_wot(double p, double q, double eps, engine::RandomSource& rng) {
  WotParams{p, q, eps}.validate();
  WotSample s;
  s.x0 = static_cast<std::uint8_t>(rng.uniform(2));
  s.x1 = static_cast<std::uint8_t>(rng.uniform(2));
  s.c = static_cast<std::uint8_t>(rng.uniform(2));
  const bool leak_c = rng.bernoulli(p);
  const bool leak_x = rng.bernoulli(q);
  const bool flip = rng.bernoulli(eps);
  s.y = s.xc() ^ (flip ? 1 : 0);
  s.u = "x" + bits2(s.x0, s.x1) + (leak_c ? std::string(":c") + char('0' + s.c) : std::string(":-"));
  s.v = "c" + bits2(s.c, s.y) + (leak_x ? std::string(":x") + char('0' + s.x_other()) : std::string(":-"));
  return s;
}

WotSampler simwot_sampler(double p, double q) {
  check_pq(p, q);
  return [p, q](engine::RandomSource& r) { return simwot_sample(p, q, r); };
}

WotSampler event_model_sampler(double p, double q, double eps) {
  WotParams{p, q, eps}.validate();
  return [p, q, eps](engine::RandomSource& r) { return event_model_wot(p, q, eps, r); };
}

std::string format_batch(const std::vector<WotSample>& batch) {
  std::string out;
  for (const auto& s : batch) {
    out += std::to_string(s.x0) + ' ' + std::to_string(s.x1) + ' ' + std::to_string(s.c) + ' ' +
           std::to_string(s.y) + ' ' + std::to_string(s.e()) + ' ' + (s.u.empty() ? "-" : s.u) + ' ' +
           (s.v.empty() ? "-" : s.v) + '\n';
  }
  return out;
}

std::vector<WotSample> parse_batch(std::string_view text) {
  std::vector<WotSample> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int x0, x1, c, y, e;
    WotSample s;
    if (!(ls >> x0 >> x1 >> c >> y >> e)) throw PreconditionError("batch line " + std::to_string(lineno));
    for (int b : {x0, x1, c, y, e})
      if (b != 0 && b != 1) throw PreconditionError("batch line " + std::to_string(lineno) + ": not a bit");
    s.x0 = static_cast<std::uint8_t>(x0);
    s.x1 = static_cast<std::uint8_t>(x1);
    s.c = static_cast<std::uint8_t>(c);
    s.y = static_cast<std::uint8_t>(y);
    if (s.e() != e) throw PreconditionError("batch line " + std::to_string(lineno) + ": e != y xor x_c");
    if (!(ls >> s.u)) s.u = "-";
    if (!(ls >> s.v)) s.v = "-";
    if (s.u == "-") s.u.clear();
    if (s.v == "-") s.v.clear();
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<WotSample> sample_batch(const WotSampler& s, std::uint64_t count, std::uint64_t seed) {
  engine::Rng rng(seed);
  std::vector<WotSample> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(s(rng));
  return out;
}

namespace {
Bytes delivery(std::uint8_t a, std::uint8_t b, const std::string& leak) {
  Writer w;
  w.u(a).u(b).u(leak.size());
  for (char ch : leak) w.u(static_cast<unsigned char>(ch));
  return w.take();
}
}  // namespace

WotDelivery decode_wot_delivery(const Bytes& b) {
  Reader r(b);
  WotDelivery d;
  d.a = static_cast<std::uint8_t>(r.below(2));
  d.b = static_cast<std::uint8_t>(r.below(2));
  const auto len = r.below(4096);
  for (std::uint64_t i = 0; i < len; ++i) d.leak.push_back(static_cast<char>(r.below(256)));
  r.finish();
  return d;
}

void WotFunctionality::on_input(Role from, const Bytes& payload, engine::FunctionalityContext& fx) {
  bool& got = from == Role::A ? got_a_ : got_b_;
  if (got) throw FunctionalityReuse("WOT instance '" + fx.slot() + "' used twice");
  if (!payload.empty()) throw ProtocolError("WOT request must be empty");
  got = true;
  if (!(got_a_ && got_b_)) return;
  const WotSample s = sampler_(fx.rng());
  fx.deliver(Role::A, delivery(s.x0, s.x1, s.u));
  fx.deliver(Role::B, delivery(s.c, s.y, s.v));
}

engine::FunctionalityFactory wot_factory(WotSampler s) {
  return [s] { return std::make_unique<WotFunctionality>(s); };
}

PartyTask simwot_party_a(PartyContext& ctx, double q) {
  const auto a0 = ctx.uniform(2, "x0'");
  const auto a1 = ctx.uniform(2, "x1'");
  const bool send = ctx.bernoulli(q, "send");
  ctx.send(engine::kComm, send ? Writer().u(a0).u(a1).take() : Bytes{});
  const Bytes b = co_await ctx.receive(engine::kComm);
  std::uint64_t x[2] = {a0, a1};
  if (!b.empty()) {
    Reader r(b);
    const auto c = r.below(2);
    const auto y = r.below(2);
    r.finish();
    x[c] = y;
  }
  ctx.output("x0", x[0]);
  ctx.output("x1", x[1]);
}

PartyTask simwot_party_b(PartyContext& ctx, double p, double q) {
  const auto c = ctx.uniform(2, "c'");
  const auto y = ctx.uniform(2, "y'");
  const Bytes a = co_await ctx.receive(engine::kComm);
  if (a.empty()) {
    const bool send = q < 1 && ctx.bernoulli(std::min(1.0, p / (1 - q)), "send");
    ctx.send(engine::kComm, send ? Writer().u(c).u(y).take() : Bytes{});
    ctx.output("c", c);
    ctx.output("y", y);
  } else {
    Reader r(a);
    std::uint64_t x[2];
    x[0] = r.below(2);
    x[1] = r.below(2);
    r.finish();
    ctx.send(engine::kComm, Bytes{});
    ctx.output("c", c);
    ctx.output("y", x[c]);
  }
}

engine::SessionSpec simwot_session(double p, double q) {
  check_pq(p, q);
  engine::SessionSpec s;
  s.a = [q](PartyContext& c) { return simwot_party_a(c, q); };
  s.b = [p, q](PartyContext& c) { return simwot_party_b(c, p, q); };
  s.corruption = engine::CorruptionMode::semi_honest_both();
  return s;
}

}  // namespace otamp::primitives
