// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "otamp/engine/session.hpp"
#include "otamp/prob/finite_dist.hpp"

namespace otamp::primitives {

// Universal OT on n-bit strings with min-entropy floor alpha on (X0, X1).
struct UotSpec {
  unsigned n = 8;
  double alpha = 8;

  void validate() const;
};

// Pairs are packed in one word: x0 in the low n bits, x1 in the next n.
inline std::uint64_t pack_pair(std::uint64_t x0, std::uint64_t x1, unsigned n) { return x0 | (x1 << n); }
inline std::uint64_t pair_lo(std::uint64_t w, unsigned n) { return w & ((std::uint64_t{1} << n) - 1); }
inline std::uint64_t pair_hi(std::uint64_t w, unsigned n) { return w >> n; }

// Distribution a malicious receiver picks for (X0, X1): an explicit table,
// or a structured family where the bits in free_mask are uniform and the
// remaining bits are a function of them.
class UotAdversary {
 public:
  using DependentFn = std::function<std::uint64_t(std::uint64_t free_bits)>;

  static UotAdversary table(unsigned n, prob::FiniteDist<std::uint64_t> dist);
  // Bits outside free_mask are fixed to fixed_values.
  static UotAdversary fixed_bits(unsigned n, std::uint64_t free_mask, std::uint64_t fixed_values);
  // Bits outside free_mask are f(free bits); f's result is masked to them.
  static UotAdversary function_of(unsigned n, std::uint64_t free_mask, DependentFn f);
  static UotAdversary uniform(unsigned n) { return fixed_bits(n, (std::uint64_t{1} << (2 * n)) - 1, 0); }

  unsigned n() const { return n_; }
  double min_entropy() const;
  bool structured() const { return !table_.has_value(); }
  std::uint64_t free_mask() const { return free_mask_; }
  // Explicit joint over packed pairs; expands structured families.
  prob::FiniteDist<std::uint64_t> distribution(std::uint64_t cap = std::uint64_t{1} << 24) const;
  std::uint64_t sample(engine::RandomSource& rng) const;

 private:
  UotAdversary() = default;
  std::uint64_t assemble(std::uint64_t free_word) const;

  unsigned n_ = 0;
  std::optional<prob::FiniteDist<std::uint64_t>> table_;
  std::uint64_t free_mask_ = 0;
  DependentFn dep_;
};

// Honest behaviour matches ROT on n-bit strings: A gets (x0, x1), B gets
// (c, x_c). With B malicious, the pair is drawn from the adversary's
// distribution and only A receives it. The entropy floor is checked when
// the functionality is built.
class UotFunctionality final : public engine::Functionality {
 public:
  UotFunctionality(UotSpec spec, std::optional<UotAdversary> adversary);
  std::string kind() const override { return "UOT"; }
  void on_input(engine::Role from, const engine::Bytes& payload, engine::FunctionalityContext& fx) override;

 private:
  UotSpec spec_;
  std::optional<UotAdversary> adv_;
  bool got_a_ = false, got_b_ = false;
};

engine::FunctionalityFactory uot_factory(UotSpec spec, std::optional<UotAdversary> adversary = std::nullopt);

}  // namespace otamp::primitives
