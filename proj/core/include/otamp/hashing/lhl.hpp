// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "otamp/hashing/entropy.hpp"
#include "otamp/hashing/toeplitz.hpp"

namespace otamp::hashing {

struct LhlReport {
  double measured;  // Delta((h(S,X), S), U_m x S)
  double bound;
  bool ok;
  std::uint64_t seeds;
};

// Exact over all Toeplitz seeds. Requires m <= H(X) - 2 log2(1/eps).
LhlReport lhl_verify(const EntropySource& src, unsigned m, double eps, std::uint64_t cap = kExhaustiveCap);

struct DistributedLhlReport {
  double measured;  // Delta((g(S,X), h(R,Y), S, R), U_m x U_n x S x R)
  double bound;     // sqrt(3)/2 * eps
  double eps;
  bool ok;          // measured <= bound
  bool ok_eps;      // measured <= eps
  std::uint64_t seed_pairs;
};

// Premises: m <= H(X) - 2 log2(1/eps), n <= H(Y) - 2 log2(1/eps),
// m + n <= H(XY) - 2 log2(1/eps). A component with zero output bits has
// no premise of its own.
DistributedLhlReport distributed_lhl_verify(const EntropySource& src, unsigned m, unsigned n_out, double eps,
                                            std::uint64_t cap = kExhaustiveCap);

// True iff the three premises above hold.
bool distributed_lhl_premises(const EntropySource& src, unsigned m, unsigned n_out, double eps);

// Exact extraction distance with no premise check.
double distributed_extraction_distance(const EntropySource& src, unsigned m, unsigned n_out,
                                       std::uint64_t cap = kExhaustiveCap);

}  // namespace otamp::hashing
