// SPDX-License-Identifier: Apache-2.0
#include "otamp/hashing/lhl.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace otamp::hashing {

namespace {

constexpr double kPremiseTol = 1e-9;

std::uint64_t seed_count(unsigned in_bits, unsigned out_bits) {
  if (out_bits == 0) return 1;
  return std::uint64_t{1} << ToeplitzHash::seed_length(in_bits, out_bits);
}

// Average over seed pairs of Delta(P_{g_s(X) h_r(Y)}, uniform).
double exact_extraction_distance(const EntropySource& src, unsigned m, unsigned n_out, std::uint64_t cap,
                                 std::uint64_t& pairs) {
  if (m > src.x_bits() || n_out > std::max(src.y_bits(), 0u)) throw PreconditionError("output longer than input");
  if (m + n_out > 24) throw CapExceeded("extraction: output table too large");
  std::vector<std::uint64_t> xs, ys;
  for (const auto& [x, y] : src.dist().domain()) {
    xs.push_back(x);
    ys.push_back(y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  struct Cell {
    std::size_t ix, iy;
    double mass;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < src.dist().size(); ++i) {
    const auto& [x, y] = src.dist().outcome(i);
    const double w = src.dist().mass_at(i);
    if (w <= 0) continue;
    cells.push_back({static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin()),
                     static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()), w});
  }
  const std::uint64_t S = seed_count(src.x_bits(), m);
  const std::uint64_t R = n_out == 0 ? 1 : seed_count(src.y_bits(), n_out);
  const long double cost = static_cast<long double>(S) * R * std::max<std::size_t>(cells.size(), 1);
  if (cost > static_cast<long double>(cap)) throw CapExceeded("extraction: enumeration exceeds the state cap");
  pairs = S * R;

  auto outputs = [](unsigned in_bits, unsigned out_bits, std::uint64_t seeds, const std::vector<std::uint64_t>& vals) {
    std::vector<std::vector<std::uint64_t>> out(seeds, std::vector<std::uint64_t>(vals.size(), 0));
    if (out_bits == 0) return out;
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const auto h = ToeplitzHash::from_word(in_bits, out_bits, s);
      for (std::size_t i = 0; i < vals.size(); ++i) out[s][i] = h(vals[i]);
    }
    return out;
  };
  const auto gx = outputs(src.x_bits(), m, S, xs);
  const auto hy = outputs(std::max(src.y_bits(), 1u), n_out, R, ys);

  const std::size_t cells_out = std::size_t{1} << (m + n_out);
  const double u = 1.0 / static_cast<double>(cells_out);
  std::vector<double> table(cells_out);
  double total = 0;
  for (std::uint64_t s = 0; s < S; ++s)
    for (std::uint64_t r = 0; r < R; ++r) {
      std::fill(table.begin(), table.end(), 0.0);
      for (const auto& c : cells) table[gx[s][c.ix] | (hy[r][c.iy] << m)] += c.mass;
      double d = 0;
      for (double t : table) d += std::abs(t - u);
      total += d / 2;
    }
  return total / static_cast<double>(S * R);
}

double slack(double h, double eps) { return h - 2 * std::log2(1 / eps); }

}  // namespace

LhlReport lhl_verify(const EntropySource& src, unsigned m, double eps, std::uint64_t cap) {
  if (!(eps > 0 && eps <= 1)) throw PreconditionError("lhl_verify: eps must be in (0, 1]");
  if (m > slack(src.h_x(), eps) + kPremiseTol) throw PremiseViolation("lhl_verify: m exceeds H(X) - 2 log(1/eps)");
  std::uint64_t seeds = 0;
  EntropySource x_only = EntropySource::single(src.dist().map([](const auto& p) { return p.first; }), src.x_bits(), 0);
  const double d = exact_extraction_distance(x_only, m, 0, cap, seeds);
  return {d, eps, d <= eps + 1e-12, seeds};
}

bool distributed_lhl_premises(const EntropySource& src, unsigned m, unsigned n_out, double eps) {
  if (!(eps > 0 && eps <= 1)) return false;
  if (m > 0 && m > slack(src.h_x(), eps) + kPremiseTol) return false;
  if (n_out > 0 && n_out > slack(src.h_y(), eps) + kPremiseTol) return false;
  return m + n_out <= slack(src.h_xy(), eps) + kPremiseTol;
}

DistributedLhlReport distributed_lhl_verify(const EntropySource& src, unsigned m, unsigned n_out, double eps,
                                            std::uint64_t cap) {
  if (!(eps > 0 && eps <= 1)) throw PreconditionError("distributed_lhl_verify: eps must be in (0, 1]");
  if (!distributed_lhl_premises(src, m, n_out, eps))
    throw PremiseViolation("distributed_lhl_verify: entropy premises do not hold");
  std::uint64_t pairs = 0;
  const double d = exact_extraction_distance(src, m, n_out, cap, pairs);
  const double bound = std::sqrt(3.0) / 2 * eps;
  return {d, bound, eps, d <= bound + 1e-12, d <= eps + 1e-12, pairs};
}

double distributed_extraction_distance(const EntropySource& src, unsigned m, unsigned n_out, std::uint64_t cap) {
  std::uint64_t pairs = 0;
  return exact_extraction_distance(src, m, n_out, cap, pairs);
}

}  // namespace otamp::hashing
