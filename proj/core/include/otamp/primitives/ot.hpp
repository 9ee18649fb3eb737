// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "otamp/engine/session.hpp"

namespace otamp::primitives {

// 1-out-of-n OT over ell-bit strings.
struct OtSpec {
  unsigned n = 2;
  unsigned ell = 1;

  void validate() const;
  std::uint64_t string_count() const { return std::uint64_t{1} << ell; }
};

engine::Bytes encode_strings(const std::vector<std::uint64_t>& xs);
std::vector<std::uint64_t> decode_strings(const engine::Bytes& b, const OtSpec& spec);
engine::Bytes encode_choice(std::uint64_t c, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> decode_choice(const engine::Bytes& b, const OtSpec& spec);

// Waits for c from B and x^n from A (either order), then sends the empty
// notification to A and x_c to B.
class OtFunctionality final : public engine::Functionality {
 public:
  explicit OtFunctionality(OtSpec spec);
  std::string kind() const override { return "OT"; }
  void on_input(engine::Role from, const engine::Bytes& payload, engine::FunctionalityContext& fx) override;

 private:
  OtSpec spec_;
  bool have_x_ = false, have_c_ = false, done_ = false;
  std::vector<std::uint64_t> x_;
  std::uint64_t c_ = 0;
};

// Randomized OT. Each party sends one message to activate it. Honest
// parties send an empty request; a malicious A sends x^n (the variant
// waiting for A), a malicious B sends (c, y) (the variant waiting for B).
// A receives x^n and B receives (c, x_c) unless they are the malicious party.
class RotFunctionality final : public engine::Functionality {
 public:
  explicit RotFunctionality(OtSpec spec);
  std::string kind() const override { return "ROT"; }
  void on_input(engine::Role from, const engine::Bytes& payload, engine::FunctionalityContext& fx) override;

 private:
  OtSpec spec_;
  bool got_a_ = false, got_b_ = false, done_ = false;
  engine::Bytes msg_a_, msg_b_;
};

engine::FunctionalityFactory ot_factory(OtSpec spec);
engine::FunctionalityFactory rot_factory(OtSpec spec);

}  // namespace otamp::primitives
