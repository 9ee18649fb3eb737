// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/uot_security.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "otamp/hashing/toeplitz.hpp"
#include "otamp/reductions/protocols.hpp"

namespace otamp::analysis {

using primitives::pair_hi;
using primitives::pair_lo;

double uot_choice_zero_probability(bool x0_light, bool x1_light) {
  if (x0_light) return 0;
  return x1_light ? 1 : 0.5;
}

namespace {

struct Weighted {
  std::uint64_t x0, x1;
  double w0, w1;  // mass with C = 0 and with C = 1
};

std::vector<Weighted> split_by_choice(const prob::FiniteDist<std::uint64_t>& d, unsigned n, double alpha) {
  std::map<std::uint64_t, double> m0, m1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    m0[pair_lo(d.outcome(i), n)] += d.mass_at(i);
    m1[pair_hi(d.outcome(i), n)] += d.mass_at(i);
  }
  const double thr = std::pow(2.0, -alpha / 2) * (1 + 1e-12);
  std::vector<Weighted> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double m = d.mass_at(i);
    if (m <= 0) continue;
    const auto x0 = pair_lo(d.outcome(i), n), x1 = pair_hi(d.outcome(i), n);
    const double pz = uot_choice_zero_probability(m0[x0] <= thr, m1[x1] <= thr);
    out.push_back({x0, x1, m * pz, m * (1 - pz)});
  }
  return out;
}

UotClosenessReport base_report(const primitives::UotAdversary& adv, double alpha, unsigned ell, double eps) {
  if (ell < 1 || ell > adv.n()) throw PreconditionError("uot_closeness: need 1 <= ell <= n");
  UotClosenessReport r;
  r.bound = 2 * eps;
  r.admissible_ell = reductions::rot_from_uot_bound(alpha, eps);
  r.premise = ell <= r.admissible_ell + 1e-12;
  r.min_entropy = adv.min_entropy();
  return r;
}

// In-place Walsh-Hadamard transform over 2^k entries.
void wht(std::vector<double>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

}  // namespace

UotClosenessReport uot_closeness_bruteforce(const primitives::UotAdversary& adv, double alpha, unsigned ell,
                                            double eps, std::uint64_t cap) {
  auto r = base_report(adv, alpha, ell, eps);
  const unsigned n = adv.n();
  const auto cells = split_by_choice(adv.distribution(), n, alpha);
  const unsigned k = hashing::ToeplitzHash::seed_length(n, ell);
  if (2 * k > 40) throw CapExceeded("uot_closeness: seed space too large");
  const std::uint64_t seeds = std::uint64_t{1} << k;
  if (static_cast<long double>(seeds) * seeds * cells.size() > cap)
    throw CapExceeded("uot_closeness: enumeration exceeds cap");
  std::vector<hashing::ToeplitzHash> hs;
  for (std::uint64_t s = 0; s < seeds; ++s) hs.push_back(hashing::ToeplitzHash::from_word(n, ell, s));
  const std::uint64_t outs = std::uint64_t{1} << ell;
  std::vector<double> table(2 * outs * outs);  // [c][u_c][u_other]
  double total = 0;
  for (std::uint64_t r0 = 0; r0 < seeds; ++r0)
    for (std::uint64_t r1 = 0; r1 < seeds; ++r1) {
      std::fill(table.begin(), table.end(), 0.0);
      for (const auto& w : cells) {
        const auto u0 = hs[r0](w.x0), u1 = hs[r1](w.x1);
        table[(0 * outs + u0) * outs + u1] += w.w0;
        table[(1 * outs + u1) * outs + u0] += w.w1;
      }
      for (std::uint64_t row = 0; row < 2 * outs; ++row) {
        double sum = 0;
        for (std::uint64_t j = 0; j < outs; ++j) sum += table[row * outs + j];
        const double avg = sum / static_cast<double>(outs);
        for (std::uint64_t j = 0; j < outs; ++j) total += std::abs(table[row * outs + j] - avg);
      }
    }
  r.closeness = total / 2 / static_cast<double>(seeds * seeds);
  r.seed_pairs = seeds * seeds;
  r.ok = r.closeness <= r.bound + 1e-12;
  return r;
}

UotClosenessReport uot_closeness(const primitives::UotAdversary& adv, double alpha, unsigned ell, double eps,
                                 std::uint64_t cap) {
  if (ell != 1) return uot_closeness_bruteforce(adv, alpha, ell, eps, cap);
  auto r = base_report(adv, alpha, ell, eps);
  const unsigned n = adv.n();
  if (2 * n > 26) throw CapExceeded("uot_closeness: transform too large");
  const auto cells = split_by_choice(adv.distribution(), n, alpha);
  // With one output bit, seed r gives h(x) = <a(r), x> for a bijective a(r),
  // so averaging over seeds is averaging over all masks (a, b).
  const std::size_t side = std::size_t{1} << n;
  std::vector<double> f0(side * side, 0.0), f1(side * side, 0.0);  // index x1 * side + x0
  for (const auto& w : cells) {
    f0[w.x1 * side + w.x0] += w.w0;
    f1[w.x1 * side + w.x0] += w.w1;
  }
  wht(f0);
  wht(f1);
  // Index b * side + a holds sum W (-1)^(a.x0 + b.x1).
  double total = 0;
  for (std::size_t b = 0; b < side; ++b)
    for (std::size_t a = 0; a < side; ++a) {
      total += std::max(std::abs(f0[b * side]), std::abs(f0[b * side + a])) / 2;
      total += std::max(std::abs(f1[a]), std::abs(f1[b * side + a])) / 2;
    }
  r.closeness = total / static_cast<double>(side * side);
  r.seed_pairs = side * side;
  r.fast_path = true;
  r.ok = r.closeness <= r.bound + 1e-12;
  return r;
}

}  // namespace otamp::analysis
