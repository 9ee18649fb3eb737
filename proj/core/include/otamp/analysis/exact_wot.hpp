// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "otamp/analysis/measure.hpp"
#include "otamp/reductions/logic.hpp"

namespace otamp::analysis {

// Exact distribution of one WOT instance with views replaced by small ids.
// After every step, view ids whose conditional distribution of all other
// variables coincides are merged; this keeps every predictive advantage
// that any later step or measurement can depend on.
class ExactWot {
 public:
  struct Cell {
    std::uint8_t x0, x1, c, y;
    std::uint32_t u, v;
    std::uint32_t aux;
    double mass;
  };

  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 26;

  static ExactWot from_joint(const WotJoint& joint);
  static ExactWot from_sampler(const primitives::WotSampler& s, unsigned cap_bits = engine::kDefaultTapeCapBits);

  ExactWot rotor() const;
  static ExactWot r_reduce(const std::vector<ExactWot>& in, std::uint64_t cap = kDefaultCap);
  static ExactWot s_reduce(const std::vector<ExactWot>& in, std::uint64_t cap = kDefaultCap);
  static ExactWot e_reduce(const std::vector<ExactWot>& in, std::uint64_t cap = kDefaultCap);
  static ExactWot apply(const reductions::ReductionStep& step, const std::vector<ExactWot>& in,
                        std::uint64_t cap = kDefaultCap);

  WotParams measure() const;
  // Joint with views rendered as "u<id>" / "v<id>".
  WotJoint to_joint() const;

  const std::vector<Cell>& cells() const { return cells_; }
  std::uint32_t u_alphabet() const { return nu_; }
  std::uint32_t v_alphabet() const { return nv_; }
  double total() const;

 private:
  void normalize();
  void compress();

  std::vector<Cell> cells_;
  std::uint32_t nu_ = 0, nv_ = 0;
};

}  // namespace otamp::analysis
