// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace otamp::planner {

// l_i(p, q) on the uniform grid over [0, 1]^2 with resolution + 1 points
// per axis. A WOT(p, q, eps) with eps < l_i(p, q) reaches
// p + q + 2 eps < offset with i applications of S-, R- or E-Reduce.
class RegionTable {
 public:
  RegionTable(unsigned resolution, double offset);

  unsigned resolution() const { return n_; }
  double offset() const { return offset_; }
  unsigned rounds() const { return static_cast<unsigned>(levels_.size() - 1); }

  // Grid value at (i / resolution, j / resolution).
  double at(unsigned level, unsigned i, unsigned j) const;
  // Bilinear interpolation; level 0 is the seed (offset - p - q) / 2.
  double lookup(unsigned level, double p, double q) const;

  // One more round: l_{i+1} = max(l_i, S^-1(l_i o S), R^-1(l_i o R), E^-1(l_i o E)).
  void iterate();

  // "p,q,l_value" rows of the last level.
  std::string to_csv() const;

 private:
  double interp(const std::vector<double>& l, double p, double q) const;

  unsigned n_;
  double offset_;
  std::vector<std::vector<double>> levels_;
};

RegionTable region_iterate(unsigned resolution, unsigned rounds, double offset = 0.02);

// Inverse of the error maps 2e - 2e^2 (two-instance R/S) and 3e^2 - 2e^3 (E, n = 3) on [0, 1/2].
double s_inverse(double e);
double e_inverse(double e);

struct CheckpointResult {
  double target_offset;
  unsigned rounds;
  std::size_t points = 0;
  std::size_t failures = 0;
  double min_slack = 0;
  bool ok() const { return failures == 0; }
};

// Compares level `rounds` against (target - p - q) / 2 at grid points with p + q < target.
CheckpointResult check_region(const RegionTable& t, double target);

// The two checkpoints: seed 0.02 after 8 rounds against 0.15, and seed 0.15 after 11 rounds against 0.24.
std::vector<CheckpointResult> region_checkpoints(unsigned resolution = 128);

}  // namespace otamp::planner
