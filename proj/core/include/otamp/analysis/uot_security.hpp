// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "otamp/primitives/uot.hpp"

namespace otamp::analysis {

// Receiver-side choice used for the hashing construction: per side the
// light set S_i = {x : Pr[X_i = x] <= 2^(-alpha/2)}. C = 0 when only x1 is
// light, C = 1 when x0 is light, and C is a fair coin when neither is.
double uot_choice_zero_probability(bool x0_light, bool x1_light);

struct UotClosenessReport {
  double closeness = 0;  // Delta((U_{1-C}, C, U_C, R0, R1), (uniform, C, U_C, R0, R1))
  double bound = 0;      // 2 eps
  double admissible_ell = 0;  // alpha/2 - 3 log2(1/eps)
  bool premise = false;  // ell <= admissible_ell
  bool ok = false;       // closeness <= bound
  double min_entropy = 0;
  std::uint64_t seed_pairs = 0;
  bool fast_path = false;
};

// Exact over every seed pair and every outcome of the adversary's
// distribution. The premise is reported, not enforced. ell = 1 uses a
// two-dimensional Walsh-Hadamard transform; other lengths enumerate seeds
// subject to `cap` on seed pairs times support size.
UotClosenessReport uot_closeness(const primitives::UotAdversary& adv, double alpha, unsigned ell, double eps,
                                 std::uint64_t cap = std::uint64_t{1} << 30);
// Always enumerates; used to cross-check the fast path.
UotClosenessReport uot_closeness_bruteforce(const primitives::UotAdversary& adv, double alpha, unsigned ell,
                                            double eps, std::uint64_t cap = std::uint64_t{1} << 30);

}  // namespace otamp::analysis
