// SPDX-License-Identifier: Apache-2.0
#include "otamp/primitives/ot.hpp"

namespace otamp::primitives {

using engine::Bytes;
using engine::Reader;
using engine::Role;
using engine::Writer;

void OtSpec::validate() const {
  if (n < 2) throw PreconditionError("OT needs n >= 2");
  if (ell < 1 || ell > 62) throw PreconditionError("OT string length must be in [1, 62]");
}

Bytes encode_strings(const std::vector<std::uint64_t>& xs) {
  Writer w;
  for (auto x : xs) w.u(x);
  return w.take();
}

std::vector<std::uint64_t> decode_strings(const Bytes& b, const OtSpec& spec) {
  Reader r(b);
  std::vector<std::uint64_t> xs(spec.n);
  for (auto& x : xs) x = r.below(spec.string_count());
  r.finish();
  return xs;
}

Bytes encode_choice(std::uint64_t c, std::uint64_t y) { return Writer().u(c).u(y).take(); }

std::pair<std::uint64_t, std::uint64_t> decode_choice(const Bytes& b, const OtSpec& spec) {
  Reader r(b);
  const auto c = r.below(spec.n);
  const auto y = r.below(spec.string_count());
  r.finish();
  return {c, y};
}

OtFunctionality::OtFunctionality(OtSpec spec) : spec_(spec) { spec_.validate(); }

void OtFunctionality::on_input(Role from, const Bytes& payload, engine::FunctionalityContext& fx) {
  if (done_ || (from == Role::A && have_x_) || (from == Role::B && have_c_))
    throw FunctionalityReuse("OT instance '" + fx.slot() + "' used twice");
  if (from == Role::A) {
    x_ = decode_strings(payload, spec_);
    have_x_ = true;
  } else {
    c_ = engine::unpack(payload, spec_.n);
    have_c_ = true;
  }
  if (have_x_ && have_c_) {
    done_ = true;
    fx.deliver(Role::A, {});
    fx.deliver(Role::B, engine::pack(x_[c_]));
  }
}

RotFunctionality::RotFunctionality(OtSpec spec) : spec_(spec) { spec_.validate(); }

void RotFunctionality::on_input(Role from, const Bytes& payload, engine::FunctionalityContext& fx) {
  bool& got = from == Role::A ? got_a_ : got_b_;
  if (done_ || got) throw FunctionalityReuse("ROT instance '" + fx.slot() + "' used twice");
  got = true;
  (from == Role::A ? msg_a_ : msg_b_) = payload;
  if (!(got_a_ && got_b_)) return;
  done_ = true;

  const auto& cm = fx.corruption();
  const bool mal_a = cm.malicious(Role::A), mal_b = cm.malicious(Role::B);
  if (mal_a && mal_b) throw PreconditionError("ROT with both parties malicious");
  auto& rng = fx.rng();
  std::vector<std::uint64_t> x(spec_.n);
  std::uint64_t c = 0;
  if (mal_a) {
    x = decode_strings(msg_a_, spec_);
    c = rng.uniform(spec_.n);
  } else if (mal_b) {
    const auto [cb, yb] = decode_choice(msg_b_, spec_);
    c = cb;
    for (std::uint64_t i = 0; i < spec_.n; ++i) x[i] = i == c ? yb : rng.bits(spec_.ell);
  } else {
    if (!msg_a_.empty() || !msg_b_.empty()) throw ProtocolError("honest ROT request must be empty");
    for (auto& xi : x) xi = rng.bits(spec_.ell);
    c = rng.uniform(spec_.n);
  }
  if (!mal_a) fx.deliver(Role::A, encode_strings(x));
  if (!mal_b) fx.deliver(Role::B, encode_choice(c, x[c]));
}

engine::FunctionalityFactory ot_factory(OtSpec spec) {
  spec.validate();
  return [spec] { return std::make_unique<OtFunctionality>(spec); };
}

engine::FunctionalityFactory rot_factory(OtSpec spec) {
  spec.validate();
  return [spec] { return std::make_unique<RotFunctionality>(spec); };
}

}  // namespace otamp::primitives
