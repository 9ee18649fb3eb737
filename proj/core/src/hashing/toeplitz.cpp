// SPDX-License-Identifier: Apache-2.0
#include "otamp/hashing/toeplitz.hpp"

#include <cmath>

#include "otamp/common/errors.hpp"

namespace otamp::hashing {

namespace {
std::uint64_t low_mask(unsigned w) { return w >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1); }
}  // namespace

ToeplitzHash::ToeplitzHash(unsigned input_len, unsigned output_len, std::vector<std::uint8_t> seed_bits)
    : n_(input_len), m_(output_len), seed_(std::move(seed_bits)) {
  if (n_ == 0 || n_ > 64) throw PreconditionError("ToeplitzHash: input length must be in [1, 64]");
  if (m_ > n_) throw PreconditionError("ToeplitzHash: output length exceeds input length");
  if (seed_.size() != seed_length(n_, m_)) throw PreconditionError("ToeplitzHash: seed length must be n + m - 1");
  rows_.assign(m_, 0);
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      if (seed_[i + n_ - 1 - j]) rows_[i] |= std::uint64_t{1} << j;
}

ToeplitzHash ToeplitzHash::from_word(unsigned input_len, unsigned output_len, std::uint64_t seed) {
  const unsigned len = seed_length(input_len, output_len);
  if (len > 64) throw PreconditionError("ToeplitzHash::from_word: seed longer than 64 bits");
  std::vector<std::uint8_t> bits(len);
  for (unsigned k = 0; k < len; ++k) bits[k] = (seed >> k) & 1;
  return ToeplitzHash(input_len, output_len, std::move(bits));
}

ToeplitzHash ToeplitzHash::random(unsigned input_len, unsigned output_len, engine::RandomSource& rng) {
  std::vector<std::uint8_t> bits(seed_length(input_len, output_len));
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bits(1));
  return ToeplitzHash(input_len, output_len, std::move(bits));
}

BitString hash_eval(const ToeplitzHash& h, BitString x) {
  if (x.width != h.input_len()) throw PreconditionError("hash_eval: input length mismatch");
  if (x.value & ~low_mask(x.width)) throw PreconditionError("hash_eval: value wider than declared length");
  return BitString{h(x.value), h.output_len()};
}

double exact_collision_rate(unsigned n, unsigned m, std::uint64_t x0, std::uint64_t x1, std::uint64_t cap) {
  if (x0 == x1) throw PreconditionError("collision rate needs distinct inputs");
  const unsigned len = ToeplitzHash::seed_length(n, m);
  if (len > 63 || (std::uint64_t{1} << len) > cap) throw CapExceeded("exact_collision_rate: seed space too large");
  std::uint64_t hits = 0;
  const std::uint64_t seeds = std::uint64_t{1} << len;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const auto h = ToeplitzHash::from_word(n, m, s);
    if (h(x0) == h(x1)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(seeds);
}

CollisionReport collision_probability_test(unsigned n, unsigned m, std::uint64_t trials,
                                           engine::RandomSource& rng) {
  if (trials == 0) throw PreconditionError("collision_probability_test: zero trials");
  if (n < 1 || n > 63) throw PreconditionError("collision_probability_test: n must be in [1, 63]");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t x0 = rng.bits(n);
    std::uint64_t x1;
    do {
      x1 = rng.bits(n);
    } while (x1 == x0);
    const auto h = ToeplitzHash::random(n, m, rng);
    if (h(x0) == h(x1)) ++hits;
  }
  const double target = std::ldexp(1.0, -static_cast<int>(m));
  const double sigma = std::sqrt(target * (1 - target) / static_cast<double>(trials));
  const double rate = static_cast<double>(hits) / static_cast<double>(trials);
  return {rate, target + 3 * sigma, sigma, trials, rate <= target + 3 * sigma};
}

}  // namespace otamp::hashing
