// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "otamp/analysis/measure.hpp"
#include "otamp/reductions/logic.hpp"

namespace otamp::analysis {

// Exact WOT distribution kept as two marginals: (bits, U) for A and
// (bits, V) for B. p depends only on the first and q only on the second,
// and every reduce step builds each side from the same side of its
// children, so the (U, V) coupling is never needed. Views are merged when
// their posterior over the bits coincides, which keeps the state small
// for deep trees.
class MarginalWot {
 public:
  struct Cell {
    std::uint8_t x0, x1, c, y;
    std::uint32_t view;
    std::uint32_t aux;
    double mass;
  };

  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 28;

  static MarginalWot from_joint(const WotJoint& joint);
  static MarginalWot from_sampler(const primitives::WotSampler& s, unsigned cap_bits = engine::kDefaultTapeCapBits);

  MarginalWot rotor() const;
  static MarginalWot r_reduce(const std::vector<MarginalWot>& in, std::uint64_t cap = kDefaultCap);
  static MarginalWot s_reduce(const std::vector<MarginalWot>& in, std::uint64_t cap = kDefaultCap);
  static MarginalWot e_reduce(const std::vector<MarginalWot>& in, std::uint64_t cap = kDefaultCap);
  static MarginalWot apply(const reductions::ReductionStep& step, const std::vector<MarginalWot>& in,
                           std::uint64_t cap = kDefaultCap);
  // n copies of the same instance; equivalent to apply(step, {w, ..., w}).
  static MarginalWot apply_power(const reductions::ReductionStep& step, const MarginalWot& w,
                                 std::uint64_t cap = kDefaultCap);

  WotParams measure() const;

  const std::vector<Cell>& side_a() const { return a_; }
  const std::vector<Cell>& side_b() const { return b_; }

 private:
  static void compress(std::vector<Cell>& side);

  std::vector<Cell> a_, b_;
};

}  // namespace otamp::analysis
