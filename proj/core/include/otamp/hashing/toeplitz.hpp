// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "otamp/engine/rng.hpp"

namespace otamp::hashing {

// Bit string of at most 64 bits; bit j of `value` is position j.
struct BitString {
  std::uint64_t value = 0;
  unsigned width = 0;
  friend bool operator==(const BitString&, const BitString&) = default;
};

// m x n Toeplitz matrix over GF(2), T[i][j] = seed[i - j + n - 1].
class ToeplitzHash {
 public:
  ToeplitzHash(unsigned input_len, unsigned output_len, std::vector<std::uint8_t> seed_bits);

  // Seed packed in a word, bit k = seed position k (needs n + m - 1 <= 64).
  static ToeplitzHash from_word(unsigned input_len, unsigned output_len, std::uint64_t seed);
  static ToeplitzHash random(unsigned input_len, unsigned output_len, engine::RandomSource& rng);
  static unsigned seed_length(unsigned input_len, unsigned output_len) {
    return input_len + output_len - 1;
  }

  unsigned input_len() const { return n_; }
  unsigned output_len() const { return m_; }
  const std::vector<std::uint8_t>& seed() const { return seed_; }
  bool entry(unsigned i, unsigned j) const { return (rows_[i] >> j) & 1; }

  // Unchecked fast path; x must have at most n significant bits.
  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < m_; ++i) out |= static_cast<std::uint64_t>(__builtin_parityll(rows_[i] & x)) << i;
    return out;
  }

 private:
  unsigned n_;
  unsigned m_;
  std::vector<std::uint8_t> seed_;
  std::vector<std::uint64_t> rows_;
};

BitString hash_eval(const ToeplitzHash& h, BitString x);

inline constexpr std::uint64_t kExhaustiveCap = std::uint64_t{1} << 24;

// Pr_S[h_S(x0) = h_S(x1)] over every seed.
double exact_collision_rate(unsigned n, unsigned m, std::uint64_t x0, std::uint64_t x1,
                            std::uint64_t cap = kExhaustiveCap);

struct CollisionReport {
  double rate;
  double bound;  // 2^-m + 3 sigma
  double sigma;
  std::uint64_t trials;
  bool ok;
};

// Random distinct pairs and random seeds.
CollisionReport collision_probability_test(unsigned n, unsigned m, std::uint64_t trials,
                                           engine::RandomSource& rng);

}  // namespace otamp::hashing
