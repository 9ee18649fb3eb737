// SPDX-License-Identifier: Apache-2.0
#include "otamp/hashing/entropy.hpp"

namespace otamp::hashing {

namespace {
constexpr double kEntropyTol = 1e-9;
}

EntropySource EntropySource::single(prob::FiniteDist<std::uint64_t> dist, unsigned bits, double floor) {
  EntropySource s;
  s.dist_ = dist.map([](std::uint64_t x) { return Pair(x, 0); });
  s.x_bits_ = bits;
  s.floor_x_ = floor;
  s.floor_xy_ = floor;
  s.finish();
  return s;
}

EntropySource EntropySource::paired(prob::FiniteDist<Pair> dist, unsigned x_bits, unsigned y_bits, double floor_x,
                                    double floor_y, double floor_xy) {
  if (y_bits == 0) throw PreconditionError("EntropySource::paired: Y needs at least one bit");
  EntropySource s;
  s.dist_ = std::move(dist);
  s.x_bits_ = x_bits;
  s.y_bits_ = y_bits;
  s.floor_x_ = floor_x;
  s.floor_y_ = floor_y;
  s.floor_xy_ = floor_xy;
  s.finish();
  return s;
}

void EntropySource::finish() {
  if (x_bits_ == 0 || x_bits_ > 32 || y_bits_ > 32) throw PreconditionError("EntropySource: bit lengths out of range");
  for (const auto& [x, y] : dist_.domain())
    if ((x >> x_bits_) != 0 || (y_bits_ < 64 && (y >> y_bits_) != 0))
      throw PreconditionError("EntropySource: outcome wider than declared length");
  h_xy_ = min_entropy(dist_);
  h_x_ = min_entropy(dist_.map([](const Pair& p) { return p.first; }));
  h_y_ = min_entropy(dist_.map([](const Pair& p) { return p.second; }));
  if (h_x_ + kEntropyTol < floor_x_ || h_y_ + kEntropyTol < floor_y_ || h_xy_ + kEntropyTol < floor_xy_)
    throw PremiseViolation("EntropySource: min-entropy below its declared floor");
}

}  // namespace otamp::hashing
