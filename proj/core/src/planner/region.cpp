// SPDX-License-Identifier: Apache-2.0
#include "otamp/planner/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "otamp/common/errors.hpp"

namespace otamp::planner {

double s_inverse(double e) {
  if (e <= 0) return 0;
  return (1 - std::sqrt(std::max(0.0, 1 - 2 * e))) / 2;
}

double e_inverse(double e) {
  if (e <= 0) return 0;
  if (e >= 0.5) return 0.5;
  double lo = 0, hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = (lo + hi) / 2;
    (3 * mid * mid - 2 * mid * mid * mid < e ? lo : hi) = mid;
  }
  return lo;
}

RegionTable::RegionTable(unsigned resolution, double offset) : n_(resolution), offset_(offset) {
  if (resolution < 64) throw PreconditionError("region grid resolution must be at least 64");
  std::vector<double> l0((n_ + 1) * (n_ + 1));
  for (unsigned i = 0; i <= n_; ++i)
    for (unsigned j = 0; j <= n_; ++j) l0[i * (n_ + 1) + j] = (offset_ - double(i) / n_ - double(j) / n_) / 2;
  levels_.push_back(std::move(l0));
}

double RegionTable::at(unsigned level, unsigned i, unsigned j) const { return levels_.at(level)[i * (n_ + 1) + j]; }

double RegionTable::interp(const std::vector<double>& l, double p, double q) const {
  const double x = std::clamp(p, 0.0, 1.0) * n_, y = std::clamp(q, 0.0, 1.0) * n_;
  const unsigned i = std::min(static_cast<unsigned>(x), n_ - 1), j = std::min(static_cast<unsigned>(y), n_ - 1);
  const double fx = x - i, fy = y - j;
  const auto v = [&](unsigned a, unsigned b) { return l[a * (n_ + 1) + b]; };
  return v(i, j) * (1 - fx) * (1 - fy) + v(i + 1, j) * fx * (1 - fy) + v(i, j + 1) * (1 - fx) * fy +
         v(i + 1, j + 1) * fx * fy;
}

double RegionTable::lookup(unsigned level, double p, double q) const {
  if (level == 0) return (offset_ - p - q) / 2;
  return interp(levels_.at(level), p, q);
}

void RegionTable::iterate() {
  std::vector<double> prev = levels_.back();
  for (auto& x : prev) x = std::max(x, 0.0);
  std::vector<double> next(prev.size());
  for (unsigned i = 0; i <= n_; ++i)
    for (unsigned j = 0; j <= n_; ++j) {
      const double p = double(i) / n_, q = double(j) / n_;
      const double s = s_inverse(interp(prev, p * p, 1 - (1 - q) * (1 - q)));
      const double r = s_inverse(interp(prev, 1 - (1 - p) * (1 - p), q * q));
      const double e = e_inverse(interp(prev, 1 - std::pow(1 - p, 3), 1 - std::pow(1 - q, 3)));
      next[i * (n_ + 1) + j] = std::max({prev[i * (n_ + 1) + j], s, r, e});
    }
  levels_.push_back(std::move(next));
}

std::string RegionTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "p,q,l_value\n";
  for (unsigned i = 0; i <= n_; ++i)
    for (unsigned j = 0; j <= n_; ++j)
      os << double(i) / n_ << ',' << double(j) / n_ << ',' << std::max(0.0, at(rounds(), i, j)) << '\n';
  return os.str();
}

RegionTable region_iterate(unsigned resolution, unsigned rounds, double offset) {
  RegionTable t(resolution, offset);
  for (unsigned r = 0; r < rounds; ++r) t.iterate();
  return t;
}

CheckpointResult check_region(const RegionTable& t, double target) {
  CheckpointResult res{target, t.rounds()};
  res.min_slack = INFINITY;
  const unsigned n = t.resolution();
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = 0; j <= n; ++j) {
      const double p = double(i) / n, q = double(j) / n;
      if (p + q >= target) continue;
      ++res.points;
      const double slack = t.at(t.rounds(), i, j) - (target - p - q) / 2;
      res.min_slack = std::min(res.min_slack, slack);
      if (slack < 0) ++res.failures;
    }
  return res;
}

std::vector<CheckpointResult> region_checkpoints(unsigned resolution) {
  return {check_region(region_iterate(resolution, 8, 0.02), 0.15),
          check_region(region_iterate(resolution, 11, 0.15), 0.24)};
}

}  // namespace otamp::planner
