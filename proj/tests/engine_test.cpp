// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>
#include <set>

#include "otamp/engine/codec.hpp"
#include "otamp/engine/rng.hpp"
#include "otamp/engine/session.hpp"
#include "otamp/primitives/ot.hpp"

namespace {

using namespace otamp;
using namespace otamp::engine;

TEST(Codec, VarintRoundTrip) {
  const std::vector<std::uint64_t> vals{0, 1, 127, 128, 300, 1ull << 35, ~0ull};
  Writer w;
  for (auto v : vals) w.u(v);
  const Bytes b = w.take();
  Reader r(b);
  for (auto v : vals) EXPECT_EQ(r.u(), v);
  EXPECT_TRUE(r.done());
  EXPECT_NO_THROW(r.finish());
}

TEST(Codec, RejectsMalformed) {
  const Bytes truncated{0x80};
  Reader r(truncated);
  EXPECT_THROW(r.u(), ProtocolError);
  const Bytes big = pack(5);
  EXPECT_THROW(unpack(big, 5), ProtocolError);
  EXPECT_EQ(unpack(big, 6), 5u);
  const Bytes two{1, 2};
  Reader t(two);
  t.u();
  EXPECT_THROW(t.finish(), ProtocolError);
}

TEST(Codec, Hex) {
  const Bytes b{0x00, 0xab, 0x7f};
  EXPECT_EQ(to_hex(b), "00ab7f");
  EXPECT_EQ(from_hex("00ab7f"), b);
  EXPECT_THROW(from_hex("0"), PreconditionError);
  EXPECT_THROW(from_hex("zz"), PreconditionError);
}

TEST(Rng, SeededStreamsAreReproducible) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, std::uint64_t{0}), derive_seed(1, std::uint64_t{1}));
  EXPECT_EQ(derive_seed(9, "x"), derive_seed(9, "x"));
}

TEST(Rng, UniformAndBitsStayInRange) {
  Rng r(7);
  std::map<std::uint64_t, int> hist;
  for (int i = 0; i < 6000; ++i) {
    const auto v = r.uniform(6);
    ASSERT_LT(v, 6u);
    hist[v]++;
  }
  for (const auto& [v, n] : hist) EXPECT_NEAR(n, 1000, 150);
  for (int i = 0; i < 100; ++i) EXPECT_LT(r.bits(5), 32u);
  EXPECT_THROW(r.uniform(0), PreconditionError);
  EXPECT_FALSE(r.bernoulli(0));
  EXPECT_TRUE(r.bernoulli(1));
}

// A sends a random bit; B echoes it back xor 1.
PartyTask echo_a(PartyContext& ctx) {
  const auto b = ctx.bits(1, "b");
  ctx.send(kComm, b);
  const auto back = unpack(co_await ctx.receive(kComm));
  ctx.output("b", b);
  ctx.output("back", back);
}

PartyTask echo_b(PartyContext& ctx) {
  const auto b = unpack(co_await ctx.receive(kComm));
  ctx.send(kComm, b ^ 1);
  ctx.output("got", b);
}

SessionSpec echo_spec() {
  SessionSpec s;
  s.a = echo_a;
  s.b = echo_b;
  return s;
}

TEST(Session, MessagesAndOutputs) {
  const auto t = run(echo_spec(), 5);
  EXPECT_EQ(t.out(Role::A, "back"), t.out(Role::A, "b") ^ 1);
  EXPECT_EQ(t.out(Role::B, "got"), t.out(Role::A, "b"));
  ASSERT_EQ(t.log.size(), 2u);
  EXPECT_EQ(t.log[0].direction, "A>B");
  EXPECT_EQ(t.log[1].direction, "B>A");
  EXPECT_FALSE(t.u_exposed);
  EXPECT_FALSE(t.v_exposed);
}

TEST(Session, SeededRunsAreDeterministic) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_EQ(run(echo_spec(), seed), run(echo_spec(), seed));
}

TEST(Session, TranscriptTextRoundTrip) {
  const auto t = run(echo_spec(), 3);
  const auto text = t.to_text();
  EXPECT_EQ(parse_log(text), t.log);
  EXPECT_NE(text.find("A>B 0 "), std::string::npos);
}

TEST(Session, ViewsRecordEverythingInOrder) {
  auto spec = echo_spec();
  spec.corruption = CorruptionMode::semi_honest(Role::B);
  const auto t = run(spec, 1);
  EXPECT_FALSE(t.u_exposed);
  EXPECT_TRUE(t.v_exposed);
  const auto& u = t.u.entries();
  ASSERT_EQ(u.size(), 5u);
  EXPECT_EQ(u[0].kind, View::Kind::Random);
  EXPECT_EQ(u[1].kind, View::Kind::Sent);
  EXPECT_EQ(u[2].kind, View::Kind::Received);
  EXPECT_EQ(t.v.find("got").size(), 1u);
  EXPECT_NE(t.u.key(), t.v.key());
  EXPECT_EQ(t.u.key({View::Kind::Output}).find("Random"), std::string::npos);
}

PartyTask wait_forever(PartyContext& ctx) { co_await ctx.receive(kComm); }

TEST(Session, DeadlockIsReported) {
  SessionSpec s;
  s.a = wait_forever;
  s.b = wait_forever;
  EXPECT_THROW(run(s, 0), DeadlockError);
}

PartyTask reuse_a(PartyContext& ctx) {
  ctx.send("ot0", primitives::encode_strings({0, 1}));
  ctx.send("ot0", primitives::encode_strings({0, 1}));
  co_return;
}

PartyTask idle(PartyContext&) { co_return; }

TEST(Session, FunctionalityIsOneShot) {
  SessionSpec s;
  s.a = reuse_a;
  s.b = idle;
  s.slot("ot0", primitives::ot_factory({}));
  EXPECT_THROW(run(s, 0), FunctionalityReuse);
}

TEST(Session, MaliciousStrategyReplacesProgram) {
  auto spec = echo_spec();
  spec.corruption = CorruptionMode::malicious(Role::B, [](PartyContext& ctx) -> PartyTask {
    co_await ctx.receive(kComm);
    ctx.send(kComm, 7);
  });
  const auto t = run(spec, 2);
  EXPECT_EQ(t.out(Role::A, "back"), 7u);
  EXPECT_TRUE(t.v_exposed);
  EXPECT_TRUE(t.out_b.empty());
}

TEST(TapeSource, EnumeratesWeightedBranches) {
  double total = 0;
  std::map<std::uint64_t, double> seen;
  for_each_run(echo_spec(), [&](const Transcript& t, double w) {
    total += w;
    seen[t.out(Role::A, "b")] += w;
  });
  EXPECT_DOUBLE_EQ(total, 1.0);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_DOUBLE_EQ(seen[0], 0.5);
}

TEST(TapeSource, BernoulliWeightsAndCap) {
  TapeSource tape;
  std::map<std::pair<bool, bool>, double> w;
  do {
    const bool first = tape.bernoulli(0.3);
    const bool second = tape.bernoulli(0.5);
    w[{first, second}] += tape.weight();
  } while (tape.advance());
  ASSERT_EQ(w.size(), 4u);
  EXPECT_NEAR((w[{true, true}]), 0.15, 1e-12);
  EXPECT_NEAR((w[{false, true}]), 0.35, 1e-12);

  TapeSource small(4);
  EXPECT_THROW(small.bits(5), CapExceeded);
}

TEST(MonteCarlo, RunsUseDerivedSeeds) {
  const auto a = monte_carlo_sample(echo_spec(), 200, 9, [](const Transcript& t) { return t.out(Role::A, "b"); });
  const auto b = monte_carlo_sample(echo_spec(), 200, 9, [](const Transcript& t) { return t.out(Role::A, "b"); });
  EXPECT_EQ(a, b);
  const auto ones = std::count(a.begin(), a.end(), 1u);
  EXPECT_GT(ones, 60);
  EXPECT_LT(ones, 140);
  std::uint64_t idx = 0;
  monte_carlo_runs(echo_spec(), 3, 4, [&](const Transcript& t, std::uint64_t i) {
    EXPECT_EQ(i, idx++);
    EXPECT_EQ(t, run(echo_spec(), derive_seed(4, i)));
  });
}

}  // namespace
