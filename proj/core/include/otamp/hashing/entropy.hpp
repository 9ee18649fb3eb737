// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "otamp/prob/finite_dist.hpp"

namespace otamp::hashing {

template <class T, class Mass>
double min_entropy(const prob::FiniteDist<T, Mass>& d) {
  double best = 0;
  for (const auto& m : d.masses()) best = std::max(best, prob::to_double(m));
  if (d.empty() || best <= 0) throw PreconditionError("min_entropy: empty distribution");
  return -std::log2(best);
}

// min over supported (x, y) of -log2 P(x | y).
template <class X, class Y, class Mass>
double conditional_min_entropy(const prob::FiniteDist<std::pair<X, Y>, Mass>& joint) {
  std::map<Y, double> py;
  for (std::size_t i = 0; i < joint.size(); ++i) py[joint.outcome(i).second] += prob::to_double(joint.mass_at(i));
  double best = 0;
  bool any = false;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const double m = prob::to_double(joint.mass_at(i));
    if (m <= 0) continue;
    best = std::max(best, m / py[joint.outcome(i).second]);
    any = true;
  }
  if (!any) throw PreconditionError("conditional_min_entropy: empty distribution");
  return -std::log2(best);
}

// Distribution over one bit string X or a pair (X, Y) of bit strings, with
// declared min-entropy floors that the actual distribution must meet.
class EntropySource {
 public:
  using Pair = std::pair<std::uint64_t, std::uint64_t>;

  static EntropySource single(prob::FiniteDist<std::uint64_t> dist, unsigned bits, double floor);
  static EntropySource paired(prob::FiniteDist<Pair> dist, unsigned x_bits, unsigned y_bits, double floor_x,
                              double floor_y, double floor_xy);

  const prob::FiniteDist<Pair>& dist() const { return dist_; }
  unsigned x_bits() const { return x_bits_; }
  unsigned y_bits() const { return y_bits_; }
  bool is_pair() const { return y_bits_ > 0; }

  double h_x() const { return h_x_; }
  double h_y() const { return h_y_; }
  double h_xy() const { return h_xy_; }
  double floor_x() const { return floor_x_; }
  double floor_y() const { return floor_y_; }
  double floor_xy() const { return floor_xy_; }

 private:
  EntropySource() = default;
  void finish();

  prob::FiniteDist<Pair> dist_;
  unsigned x_bits_ = 0;
  unsigned y_bits_ = 0;
  double floor_x_ = 0, floor_y_ = 0, floor_xy_ = 0;
  double h_x_ = 0, h_y_ = 0, h_xy_ = 0;
};

}  // namespace otamp::hashing
