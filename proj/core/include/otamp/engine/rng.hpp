// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace otamp::engine {

// Source of protocol randomness. Seeded generators and enumeration tapes
// both implement it, so samplers and parties never see the difference.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  // Uniform in [0, n), n >= 1.
  virtual std::uint64_t uniform(std::uint64_t n) = 0;
  virtual bool bernoulli(double p) = 0;
  // k uniform bits, k <= 64.
  virtual std::uint64_t bits(unsigned k);
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  std::uint64_t next() { return gen_(); }
  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t uniform(std::uint64_t n) override;
  bool bernoulli(double p) override;
  std::uint64_t bits(unsigned k) override;

  std::uint64_t seed() const { return seed_; }
  Rng fork(std::string_view label) const { return Rng(derive_seed(seed_, label)); }
  Rng fork(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace otamp::engine
