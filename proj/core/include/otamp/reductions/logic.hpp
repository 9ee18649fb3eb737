// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace otamp::reductions {

using Bits = std::vector<std::uint8_t>;

enum class StepKind { RotFromOt, OtFromRot, Rotor, RotFromUot, RReduce, SReduce, EReduce };

struct ReductionStep {
  StepKind kind;
  unsigned n = 1;    // instances for the reduce family
  unsigned ell = 1;  // output length for RotFromUot

  unsigned arity() const;
  void validate() const;
  std::string name() const;
  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

const char* kind_name(StepKind k);
StepKind parse_kind(const std::string& s);

namespace rotor {
// Holder of the sender pair (x'0, x'1) becomes the receiver.
inline std::pair<std::uint8_t, std::uint8_t> from_sender(std::uint8_t x0, std::uint8_t x1) {
  return {static_cast<std::uint8_t>(x0 ^ x1), x0};
}
// Holder of the receiver pair (c', y') becomes the sender.
inline std::pair<std::uint8_t, std::uint8_t> from_receiver(std::uint8_t c, std::uint8_t y) {
  return {y, static_cast<std::uint8_t>(c ^ y)};
}
}  // namespace rotor

namespace rreduce {
// d_i = c_{n-1} xor c_i for i < n-1; the last entry is fixed to 0.
Bits directions(const Bits& c);
std::pair<std::uint8_t, std::uint8_t> sender_output(const Bits& x0, const Bits& x1, const Bits& d);
std::uint8_t receiver_output(const Bits& y);
}  // namespace rreduce

namespace ereduce {
using rreduce::directions;
// s_{j,i} = x_{d_i xor j, i} xor x_{j, n-1} for i < n-1.
std::pair<Bits, Bits> masks(const Bits& x0, const Bits& x1, const Bits& d);
// Majority of y_i xor s_{c,i} (i < n-1) and y_{n-1}; n must be odd.
std::uint8_t decode(const Bits& y, const Bits& s0, const Bits& s1, std::uint8_t c_last);
}  // namespace ereduce

namespace otrot {
// d = c' - c mod n.
inline std::uint64_t offset(std::uint64_t c_rot, std::uint64_t c, std::uint64_t n) { return (c_rot + n - c) % n; }
// m_i = x_i xor x'_{i + d mod n}.
std::vector<std::uint64_t> masks(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& x_rot,
                                 std::uint64_t d);
}  // namespace otrot

}  // namespace otamp::reductions
