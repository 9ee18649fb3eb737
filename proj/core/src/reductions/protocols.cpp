// SPDX-License-Identifier: Apache-2.0
#include "otamp/reductions/protocols.hpp"

#include <cmath>

#include "otamp/reductions/logic.hpp"

namespace otamp::reductions {

using engine::Bytes;
using engine::kComm;
using engine::PartyContext;
using engine::PartyTask;
using engine::Reader;
using engine::Writer;
using primitives::OtSpec;

namespace {

std::string idx(const char* base, std::size_t i) { return base + std::to_string(i); }

Bytes encode_bits(const Bits& b, std::size_t count) {
  Writer w;
  for (std::size_t i = 0; i < count; ++i) w.bit(b[i]);
  return w.take();
}

Bits decode_bits(const Bytes& m, std::size_t count) {
  Reader r(m);
  Bits b(count);
  for (auto& x : b) x = r.bit();
  r.finish();
  return b;
}

void expect_empty(const Bytes& b, const char* what) {
  if (!b.empty()) throw ProtocolError(std::string(what) + ": expected the empty notification");
}

PartyTask rot_from_ot_a(PartyContext& ctx, OtSpec spec) {
  std::vector<std::uint64_t> x(spec.n);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = ctx.bits(spec.ell, idx("x", i));
  ctx.send("ot0", primitives::encode_strings(x));
  expect_empty(co_await ctx.receive("ot0"), "OT");
  for (std::size_t i = 0; i < x.size(); ++i) ctx.output(idx("x", i), x[i]);
}

PartyTask rot_from_ot_b(PartyContext& ctx, OtSpec spec) {
  const auto c = ctx.uniform(spec.n, "c");
  ctx.send("ot0", c);
  const auto y = engine::unpack(co_await ctx.receive("ot0"), spec.string_count());
  ctx.output("c", c);
  ctx.output("y", y);
}

PartyTask ot_from_rot_a(PartyContext& ctx, OtSpec spec, std::vector<std::uint64_t> x) {
  for (std::size_t i = 0; i < x.size(); ++i) ctx.input(idx("x", i), x[i]);
  ctx.send("rot0", Bytes{});
  const auto xr = primitives::decode_strings(co_await ctx.receive("rot0"), spec);
  const auto d = engine::unpack(co_await ctx.receive(kComm), spec.n);
  ctx.send(kComm, primitives::encode_strings(otrot::masks(x, xr, d)));
}

PartyTask ot_from_rot_b(PartyContext& ctx, OtSpec spec, std::uint64_t c) {
  ctx.input("c", c);
  ctx.send("rot0", Bytes{});
  const auto [cr, yr] = primitives::decode_choice(co_await ctx.receive("rot0"), spec);
  ctx.send(kComm, otrot::offset(cr, c, spec.n));
  const auto m = primitives::decode_strings(co_await ctx.receive(kComm), spec);
  ctx.output("y", m[c] ^ yr);
}

PartyTask rotor_a(PartyContext& ctx) {
  ctx.send("rot0", Bytes{});
  const auto x = primitives::decode_strings(co_await ctx.receive("rot0"), OtSpec{});
  const auto [c, y] = rotor::from_sender(static_cast<std::uint8_t>(x[0]), static_cast<std::uint8_t>(x[1]));
  ctx.output("c", c);
  ctx.output("y", y);
}

PartyTask rotor_b(PartyContext& ctx) {
  ctx.send("rot0", Bytes{});
  const auto [cr, yr] = primitives::decode_choice(co_await ctx.receive("rot0"), OtSpec{});
  const auto [x0, x1] = rotor::from_receiver(static_cast<std::uint8_t>(cr), static_cast<std::uint8_t>(yr));
  ctx.output("x0", x0);
  ctx.output("x1", x1);
}

PartyTask reversed_ot_a(PartyContext& ctx, std::uint8_t c) {
  ctx.input("c", c);
  const auto x0 = ctx.bits(1, "x0'"), x1 = ctx.bits(1, "x1'");
  ctx.send("ot0", primitives::encode_strings({x0, x1}));
  expect_empty(co_await ctx.receive("ot0"), "OT");
  const auto [cr, yr] = rotor::from_sender(static_cast<std::uint8_t>(x0), static_cast<std::uint8_t>(x1));
  ctx.send(kComm, otrot::offset(cr, c, 2));
  const auto m = primitives::decode_strings(co_await ctx.receive(kComm), OtSpec{});
  ctx.output("y", m[c] ^ yr);
}

PartyTask reversed_ot_b(PartyContext& ctx, std::uint8_t x0, std::uint8_t x1) {
  ctx.input("x0", x0);
  ctx.input("x1", x1);
  const auto cb = ctx.uniform(2, "c'");
  ctx.send("ot0", cb);
  const auto yb = engine::unpack(co_await ctx.receive("ot0"), 2);
  const auto [r0, r1] = rotor::from_receiver(static_cast<std::uint8_t>(cb), static_cast<std::uint8_t>(yb));
  const auto d = engine::unpack(co_await ctx.receive(kComm), 2);
  ctx.send(kComm, primitives::encode_strings(otrot::masks({x0, x1}, {r0, r1}, d)));
}

PartyTask rot_from_uot_a(PartyContext& ctx, unsigned n, unsigned ell) {
  ctx.send("uot0", Bytes{});
  Bytes got = co_await ctx.receive("uot0");
  Reader r(got);
  const auto x0 = r.below(std::uint64_t{1} << n), x1 = r.below(std::uint64_t{1} << n);
  r.finish();
  const unsigned k = hashing::ToeplitzHash::seed_length(n, ell);
  const auto r0 = ctx.bits(k, "r0"), r1 = ctx.bits(k, "r1");
  ctx.send(kComm, Writer().u(r0).u(r1).take());
  ctx.output("u0", hashing::ToeplitzHash::from_word(n, ell, r0)(x0));
  ctx.output("u1", hashing::ToeplitzHash::from_word(n, ell, r1)(x1));
}

PartyTask rot_from_uot_b(PartyContext& ctx, unsigned n, unsigned ell) {
  ctx.send("uot0", Bytes{});
  Bytes got = co_await ctx.receive("uot0");
  Reader r(got);
  const auto c = r.below(2), w = r.below(std::uint64_t{1} << n);
  r.finish();
  Bytes seeds = co_await ctx.receive(kComm);
  Reader rs(seeds);
  const auto r0 = rs.u(), r1 = rs.u();
  rs.finish();
  ctx.output("c", c);
  ctx.output("y", hashing::ToeplitzHash::from_word(n, ell, c ? r1 : r0)(w));
}

struct Collected {
  Bits a, b;  // (x0, x1) for A or (c, y) for B
};

void request_all(PartyContext& ctx, unsigned n) {
  for (unsigned i = 0; i < n; ++i) ctx.send(idx("wot", i), Bytes{});
}

PartyTask r_reduce_a(PartyContext& ctx, unsigned n) {
  request_all(ctx, n);
  Bits x0(n), x1(n);
  for (unsigned i = 0; i < n; ++i) {
    const auto d = primitives::decode_wot_delivery(co_await ctx.receive(idx("wot", i)));
    x0[i] = d.a;
    x1[i] = d.b;
  }
  Bits d = decode_bits(co_await ctx.receive(kComm), n - 1);
  d.push_back(0);
  const auto [o0, o1] = rreduce::sender_output(x0, x1, d);
  ctx.output("x0", o0);
  ctx.output("x1", o1);
}

PartyTask r_reduce_b(PartyContext& ctx, unsigned n) {
  request_all(ctx, n);
  Bits c(n), y(n);
  for (unsigned i = 0; i < n; ++i) {
    const auto d = primitives::decode_wot_delivery(co_await ctx.receive(idx("wot", i)));
    c[i] = d.a;
    y[i] = d.b;
  }
  ctx.send(kComm, encode_bits(rreduce::directions(c), n - 1));
  ctx.output("c", c.back());
  ctx.output("y", rreduce::receiver_output(y));
}

PartyTask s_reduce_a(PartyContext& ctx, unsigned n) {
  request_all(ctx, n);
  Bits c(n), y(n);
  for (unsigned i = 0; i < n; ++i) {
    const auto d = primitives::decode_wot_delivery(co_await ctx.receive(idx("wot", i)));
    std::tie(c[i], y[i]) = rotor::from_sender(d.a, d.b);
  }
  ctx.send(kComm, encode_bits(rreduce::directions(c), n - 1));
  const auto [x0, x1] = rotor::from_receiver(c.back(), rreduce::receiver_output(y));
  ctx.output("x0", x0);
  ctx.output("x1", x1);
}

PartyTask s_reduce_b(PartyContext& ctx, unsigned n) {
  request_all(ctx, n);
  Bits x0(n), x1(n);
  for (unsigned i = 0; i < n; ++i) {
    const auto d = primitives::decode_wot_delivery(co_await ctx.receive(idx("wot", i)));
    std::tie(x0[i], x1[i]) = rotor::from_receiver(d.a, d.b);
  }
  Bits d = decode_bits(co_await ctx.receive(kComm), n - 1);
  d.push_back(0);
  const auto [o0, o1] = rreduce::sender_output(x0, x1, d);
  const auto [c, y] = rotor::from_sender(o0, o1);
  ctx.output("c", c);
  ctx.output("y", y);
}

PartyTask e_reduce_a(PartyContext& ctx, unsigned n) {
  request_all(ctx, n);
  Bits x0(n), x1(n);
  for (unsigned i = 0; i < n; ++i) {
    const auto d = primitives::decode_wot_delivery(co_await ctx.receive(idx("wot", i)));
    x0[i] = d.a;
    x1[i] = d.b;
  }
  Bits d = decode_bits(co_await ctx.receive(kComm), n - 1);
  d.push_back(0);
  const auto [s0, s1] = ereduce::masks(x0, x1, d);
  Bits both = s0;
  both.insert(both.end(), s1.begin(), s1.end());
  ctx.send(kComm, encode_bits(both, both.size()));
  ctx.output("x0", x0.back());
  ctx.output("x1", x1.back());
}

PartyTask e_reduce_b(PartyContext& ctx, unsigned n) {
  request_all(ctx, n);
  Bits c(n), y(n);
  for (unsigned i = 0; i < n; ++i) {
    const auto d = primitives::decode_wot_delivery(co_await ctx.receive(idx("wot", i)));
    c[i] = d.a;
    y[i] = d.b;
  }
  ctx.send(kComm, encode_bits(ereduce::directions(c), n - 1));
  const Bits both = decode_bits(co_await ctx.receive(kComm), 2 * (n - 1));
  const Bits s0(both.begin(), both.begin() + (n - 1)), s1(both.begin() + (n - 1), both.end());
  ctx.output("c", c.back());
  ctx.output("y", ereduce::decode(y, s0, s1, c.back()));
}

SessionSpec reduce_session(unsigned n, const primitives::WotSampler& leaf, PartyTask (*a)(PartyContext&, unsigned),
                           PartyTask (*b)(PartyContext&, unsigned)) {
  if (n < 1) throw PreconditionError("reduce needs n >= 1");
  SessionSpec s;
  s.a = [a, n](PartyContext& c) { return a(c, n); };
  s.b = [b, n](PartyContext& c) { return b(c, n); };
  for (unsigned i = 0; i < n; ++i) s.slot(idx("wot", i), primitives::wot_factory(leaf));
  s.corruption = CorruptionMode::semi_honest_both();
  return s;
}

}  // namespace

SessionSpec rot_from_ot_session(OtSpec spec, CorruptionMode mode) {
  spec.validate();
  SessionSpec s;
  s.a = [spec](PartyContext& c) { return rot_from_ot_a(c, spec); };
  s.b = [spec](PartyContext& c) { return rot_from_ot_b(c, spec); };
  s.slot("ot0", primitives::ot_factory(spec));
  s.corruption = std::move(mode);
  return s;
}

SessionSpec ot_from_rot_session(OtSpec spec, std::vector<std::uint64_t> x, std::uint64_t c, CorruptionMode mode) {
  spec.validate();
  if (x.size() != spec.n) throw PreconditionError("OTfromROT: expected n input strings");
  for (auto xi : x)
    if (xi >= spec.string_count()) throw PreconditionError("OTfromROT: input string too long");
  if (c >= spec.n) throw PreconditionError("OTfromROT: choice out of range");
  SessionSpec s;
  s.a = [spec, x](PartyContext& ctx) { return ot_from_rot_a(ctx, spec, x); };
  s.b = [spec, c](PartyContext& ctx) { return ot_from_rot_b(ctx, spec, c); };
  s.slot("rot0", primitives::rot_factory(spec));
  s.corruption = std::move(mode);
  return s;
}

SessionSpec rotor_session(CorruptionMode mode) {
  SessionSpec s;
  s.a = [](PartyContext& c) { return rotor_a(c); };
  s.b = [](PartyContext& c) { return rotor_b(c); };
  s.slot("rot0", primitives::rot_factory(OtSpec{}));
  s.corruption = std::move(mode);
  return s;
}

SessionSpec reversed_ot_session(std::uint8_t x0, std::uint8_t x1, std::uint8_t c) {
  if (x0 > 1 || x1 > 1 || c > 1) throw PreconditionError("reversed OT works on bits");
  SessionSpec s;
  s.a = [c](PartyContext& ctx) { return reversed_ot_a(ctx, c); };
  s.b = [x0, x1](PartyContext& ctx) { return reversed_ot_b(ctx, x0, x1); };
  s.slot("ot0", primitives::ot_factory(OtSpec{}));
  s.corruption = CorruptionMode::semi_honest_both();
  return s;
}

double rot_from_uot_bound(double alpha, double eps) {
  if (!(eps > 0 && eps <= 1)) throw PreconditionError("eps must lie in (0, 1]");
  return alpha / 2 - 3 * std::log2(1 / eps);
}

SessionSpec rot_from_uot_session(primitives::UotSpec spec, unsigned ell, double eps,
                                 std::optional<primitives::UotAdversary> adversary, CorruptionMode mode) {
  spec.validate();
  if (ell < 1 || ell > spec.n) throw PreconditionError("ROTfromUOT needs 1 <= ell <= n");
  const double bound = rot_from_uot_bound(spec.alpha, eps);
  if (ell > bound + 1e-12)
    throw PremiseViolation("ROTfromUOT: ell = " + std::to_string(ell) + " exceeds alpha/2 - 3 log2(1/eps) = " +
                           std::to_string(bound));
  const unsigned n = spec.n;
  SessionSpec s;
  s.a = [n, ell](PartyContext& c) { return rot_from_uot_a(c, n, ell); };
  s.b = [n, ell](PartyContext& c) { return rot_from_uot_b(c, n, ell); };
  s.slot("uot0", primitives::uot_factory(spec, std::move(adversary)));
  s.corruption = std::move(mode);
  return s;
}

SessionSpec r_reduce_session(unsigned n, primitives::WotSampler leaf) {
  return reduce_session(n, leaf, r_reduce_a, r_reduce_b);
}

SessionSpec s_reduce_session(unsigned n, primitives::WotSampler leaf) {
  return reduce_session(n, leaf, s_reduce_a, s_reduce_b);
}

SessionSpec e_reduce_session(unsigned n, primitives::WotSampler leaf) {
  if (n % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
  return reduce_session(n, leaf, e_reduce_a, e_reduce_b);
}

primitives::WotSample wot_from_transcript(const engine::Transcript& t) {
  primitives::WotSample s;
  s.x0 = static_cast<std::uint8_t>(t.out(engine::Role::A, "x0"));
  s.x1 = static_cast<std::uint8_t>(t.out(engine::Role::A, "x1"));
  s.c = static_cast<std::uint8_t>(t.out(engine::Role::B, "c"));
  s.y = static_cast<std::uint8_t>(t.out(engine::Role::B, "y"));
  s.u = t.u.key();
  s.v = t.v.key();
  return s;
}

}  // namespace otamp::reductions
