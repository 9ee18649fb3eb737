// SPDX-License-Identifier: Apache-2.0
#include "otamp/engine/rng.hpp"

#include <limits>

#include "otamp/common/errors.hpp"

namespace otamp::engine {

std::uint64_t RandomSource::bits(unsigned k) {
  if (k > 64) throw PreconditionError("bits: at most 64 bits per draw");
  if (k == 0) return 0;
  if (k <= 32) return uniform(std::uint64_t{1} << k);
  const std::uint64_t lo = uniform(std::uint64_t{1} << 32);
  return lo | (bits(k - 32) << 32);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::uniform(std::uint64_t n) {
  if (n == 0) throw PreconditionError("uniform: empty range");
  if ((n & (n - 1)) == 0) return next() & (n - 1);
  const std::uint64_t lim = (std::numeric_limits<std::uint64_t>::max() / n) * n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= lim);
  return x % n;
}

bool Rng::bernoulli(double p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return unit() < p;
}

std::uint64_t Rng::bits(unsigned k) {
  if (k > 64) throw PreconditionError("bits: at most 64 bits per draw");
  if (k == 0) return 0;
  const std::uint64_t x = next();
  return k == 64 ? x : (x & ((std::uint64_t{1} << k) - 1));
}

}  // namespace otamp::engine
