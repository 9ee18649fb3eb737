// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "otamp/common/errors.hpp"

namespace otamp::prob {

using Rational = boost::rational<long long>;

// Generic outcome type: a tuple of small integers.
using Outcome = std::vector<std::int64_t>;

template <class M>
struct MassTraits {
  static constexpr bool exact = false;
  static double to_double(M m) { return static_cast<double>(m); }
  static M abs(M m) { return std::abs(m); }
  static M from_ratio(long long num, long long den) {
    return static_cast<M>(num) / static_cast<M>(den);
  }
};

template <>
struct MassTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& m) { return boost::rational_cast<double>(m); }
  static Rational abs(const Rational& m) { return boost::abs(m); }
  static Rational from_ratio(long long num, long long den) { return Rational(num, den); }
};

template <class M>
double to_double(const M& m) {
  return MassTraits<M>::to_double(m);
}

// Probability table over a finite, lexicographically ordered outcome set.
// Zero-mass outcomes may be part of the domain.
template <class T, class Mass = double>
class FiniteDist {
 public:
  using value_type = T;
  using mass_type = Mass;

  FiniteDist() = default;

  // Duplicated outcomes are merged; the result is sorted.
  explicit FiniteDist(std::vector<std::pair<T, Mass>> entries, bool validate = true) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [x, m] : entries) {
      if (!outcomes_.empty() && outcomes_.back() == x) {
        masses_.back() += m;
      } else {
        outcomes_.push_back(std::move(x));
        masses_.push_back(m);
      }
    }
    if (validate) check();
  }

  static FiniteDist uniform(std::vector<T> domain) {
    if (domain.empty()) throw PreconditionError("uniform distribution over empty domain");
    std::vector<std::pair<T, Mass>> e;
    e.reserve(domain.size());
    const auto n = static_cast<long long>(domain.size());
    for (auto& x : domain) e.emplace_back(std::move(x), MassTraits<Mass>::from_ratio(1, n));
    FiniteDist d(std::move(e), false);
    if (d.size() != static_cast<std::size_t>(n))
      throw PreconditionError("uniform distribution over a domain with repeated outcomes");
    d.check();
    return d;
  }

  static FiniteDist point(T x) { return FiniteDist({{std::move(x), Mass(1)}}); }

  std::size_t size() const { return outcomes_.size(); }
  bool empty() const { return outcomes_.empty(); }
  const std::vector<T>& domain() const { return outcomes_; }
  const std::vector<Mass>& masses() const { return masses_; }
  const T& outcome(std::size_t i) const { return outcomes_[i]; }
  const Mass& mass_at(std::size_t i) const { return masses_[i]; }

  Mass prob(const T& x) const {
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), x);
    if (it == outcomes_.end() || !(*it == x)) return Mass(0);
    return masses_[static_cast<std::size_t>(it - outcomes_.begin())];
  }

  Mass total() const {
    Mass s(0);
    for (const auto& m : masses_) s += m;
    return s;
  }

  bool same_domain(const FiniteDist& o) const { return outcomes_ == o.outcomes_; }

  std::vector<T> support() const {
    std::vector<T> s;
    for (std::size_t i = 0; i < size(); ++i)
      if (masses_[i] > Mass(0)) s.push_back(outcomes_[i]);
    return s;
  }

  // Same distribution listed over a larger outcome set (missing outcomes get mass 0).
  FiniteDist embed(std::vector<T> superset) const {
    std::sort(superset.begin(), superset.end());
    superset.erase(std::unique(superset.begin(), superset.end()), superset.end());
    std::vector<std::pair<T, Mass>> e;
    e.reserve(superset.size());
    for (auto& x : superset) {
      Mass m = prob(x);
      e.emplace_back(std::move(x), m);
    }
    for (std::size_t i = 0; i < size(); ++i)
      if (masses_[i] > Mass(0) && !std::binary_search(superset.begin(), superset.end(), outcomes_[i]))
        throw DomainMismatch("embed: target domain misses a supported outcome");
    return FiniteDist(std::move(e), false);
  }

  // Push-forward through f.
  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<std::invoke_result_t<F, const T&>>;
    std::vector<std::pair<U, Mass>> e;
    e.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) e.emplace_back(f(outcomes_[i]), masses_[i]);
    return FiniteDist<U, Mass>(std::move(e), false);
  }

  template <class Pred>
  FiniteDist condition(Pred&& pred) const {
    std::vector<std::pair<T, Mass>> e;
    Mass z(0);
    for (std::size_t i = 0; i < size(); ++i)
      if (pred(outcomes_[i])) {
        e.emplace_back(outcomes_[i], masses_[i]);
        z += masses_[i];
      }
    if (!(z > Mass(0))) throw PreconditionError("conditioning on an event of probability zero");
    for (auto& [x, m] : e) m /= z;
    return FiniteDist(std::move(e), false);
  }

  FiniteDist<T, double> to_double_dist() const {
    std::vector<std::pair<T, double>> e;
    for (std::size_t i = 0; i < size(); ++i) e.emplace_back(outcomes_[i], to_double(masses_[i]));
    return FiniteDist<T, double>(std::move(e), false);
  }

  void check() const {
    Mass s(0);
    for (const auto& m : masses_) {
      if (m < Mass(0)) throw PreconditionError("negative probability mass");
      s += m;
    }
    if constexpr (MassTraits<Mass>::exact) {
      if (s != Mass(1)) throw PreconditionError("masses do not sum to one");
    } else {
      const double tol = 1e-12 + 4e-16 * static_cast<double>(size());
      if (std::abs(to_double(s) - 1.0) > tol) throw PreconditionError("masses do not sum to one");
    }
  }

 private:
  std::vector<T> outcomes_;
  std::vector<Mass> masses_;
};

template <class T, class Mass>
Mass statistical_distance(const FiniteDist<T, Mass>& a, const FiniteDist<T, Mass>& b) {
  if (!a.same_domain(b)) throw DomainMismatch("statistical_distance: domains differ");
  Mass s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += MassTraits<Mass>::abs(a.mass_at(i) - b.mass_at(i));
  return s / Mass(2);
}

template <class T, class Mass>
struct SetAdvantage {
  Mass value;
  std::vector<T> set;
};

// max_S Pr_a[S] - Pr_b[S], attained by S = {u : a(u) > b(u)}.
template <class T, class Mass>
SetAdvantage<T, Mass> max_set_advantage(const FiniteDist<T, Mass>& a, const FiniteDist<T, Mass>& b) {
  if (!a.same_domain(b)) throw DomainMismatch("max_set_advantage: domains differ");
  SetAdvantage<T, Mass> r{Mass(0), {}};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.mass_at(i) > b.mass_at(i)) {
      r.value += a.mass_at(i) - b.mass_at(i);
      r.set.push_back(a.outcome(i));
    }
  return r;
}

template <class A, class B, class Mass>
FiniteDist<std::pair<A, B>, Mass> product(const FiniteDist<A, Mass>& a, const FiniteDist<B, Mass>& b) {
  std::vector<std::pair<std::pair<A, B>, Mass>> e;
  e.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      e.emplace_back(std::make_pair(a.outcome(i), b.outcome(j)), a.mass_at(i) * b.mass_at(j));
  return FiniteDist<std::pair<A, B>, Mass>(std::move(e), false);
}

inline constexpr std::size_t kDefaultProductCap = std::size_t{1} << 20;

// Visits every combination of outcomes of independent distributions.
// f receives the index tuple and the product mass.
template <class T, class Mass, class F>
void for_each_combination(const std::vector<FiniteDist<T, Mass>>& ds, std::size_t cap, F&& f) {
  long double count = 1;
  for (const auto& d : ds) count *= static_cast<long double>(d.size());
  if (count > static_cast<long double>(cap))
    throw CapExceeded("product distribution exceeds the outcome cap");
  std::vector<std::size_t> idx(ds.size(), 0);
  if (ds.empty()) return;
  for (const auto& d : ds)
    if (d.empty()) return;
  while (true) {
    Mass m(1);
    for (std::size_t i = 0; i < ds.size(); ++i) m *= ds[i].mass_at(idx[i]);
    f(idx, m);
    std::size_t k = 0;
    while (k < ds.size() && ++idx[k] == ds[k].size()) idx[k++] = 0;
    if (k == ds.size()) break;
  }
}

// Joint distribution of a bit X and side information Y.
template <class Y, class Mass = double>
class JointBitDist {
 public:
  using outcome_type = std::pair<std::uint8_t, Y>;
  struct Row {
    Y y;
    Mass p0;
    Mass p1;
  };

  explicit JointBitDist(FiniteDist<outcome_type, Mass> joint) : joint_(std::move(joint)) {
    std::map<Y, std::pair<Mass, Mass>> acc;
    for (std::size_t i = 0; i < joint_.size(); ++i) {
      const auto& [x, y] = joint_.outcome(i);
      if (x > 1) throw PreconditionError("JointBitDist: first coordinate must be a bit");
      auto& slot = acc.try_emplace(y, Mass(0), Mass(0)).first->second;
      (x == 0 ? slot.first : slot.second) += joint_.mass_at(i);
    }
    rows_.reserve(acc.size());
    for (auto& [y, pm] : acc) rows_.push_back(Row{y, pm.first, pm.second});
  }

  template <class T, class FX, class FY>
  static JointBitDist from(const FiniteDist<T, Mass>& d, FX&& bit, FY&& side) {
    return JointBitDist(d.map([&](const T& t) {
      return outcome_type(static_cast<std::uint8_t>(bit(t)), side(t));
    }));
  }

  const FiniteDist<outcome_type, Mass>& joint() const { return joint_; }
  const std::vector<Row>& rows() const { return rows_; }

  FiniteDist<std::uint8_t, Mass> bit_marginal() const {
    return joint_.map([](const outcome_type& o) { return o.first; });
  }
  FiniteDist<Y, Mass> side_marginal() const {
    return joint_.map([](const outcome_type& o) { return o.second; });
  }

 private:
  FiniteDist<outcome_type, Mass> joint_;
  std::vector<Row> rows_;
};

// 2 max_f Pr[f(Y) = X] - 1 via the pointwise optimal guess.
template <class Y, class Mass>
Mass pred_adv(const JointBitDist<Y, Mass>& j) {
  Mass best(0);
  for (const auto& r : j.rows()) best += std::max(r.p0, r.p1);
  Mass v = Mass(2) * best - Mass(1);
  if (v < Mass(0)) v = Mass(0);
  return v;
}

// Delta(P_XY, P_U x P_Y) computed as a plain statistical distance.
template <class Y, class Mass>
Mass distance_to_uniform_bit(const JointBitDist<Y, Mass>& j) {
  using O = typename JointBitDist<Y, Mass>::outcome_type;
  std::vector<std::pair<O, Mass>> ref, act;
  for (const auto& r : j.rows()) {
    const Mass half = (r.p0 + r.p1) / Mass(2);
    ref.emplace_back(O(0, r.y), half);
    ref.emplace_back(O(1, r.y), half);
    act.emplace_back(O(0, r.y), r.p0);
    act.emplace_back(O(1, r.y), r.p1);
  }
  return statistical_distance(FiniteDist<O, Mass>(std::move(act), false),
                              FiniteDist<O, Mass>(std::move(ref), false));
}

// Delta(P_XY, U_X x P_Y) for X ranging over `alphabet`.
template <class X, class Y, class Mass>
Mass distance_from_uniform_given(const FiniteDist<std::pair<X, Y>, Mass>& joint,
                                 const std::vector<X>& alphabet) {
  std::map<Y, std::map<X, Mass>> by_y;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const auto& [x, y] = joint.outcome(i);
    if (std::find(alphabet.begin(), alphabet.end(), x) == alphabet.end())
      throw DomainMismatch("distance_from_uniform_given: value outside alphabet");
    by_y[y][x] += joint.mass_at(i);
  }
  const auto k = static_cast<long long>(alphabet.size());
  Mass s(0);
  for (const auto& [y, row] : by_y) {
    Mass py(0);
    for (const auto& [x, m] : row) py += m;
    const Mass u = py * MassTraits<Mass>::from_ratio(1, k);
    for (const auto& x : alphabet) {
      auto it = row.find(x);
      const Mass m = it == row.end() ? Mass(0) : it->second;
      s += MassTraits<Mass>::abs(m - u);
    }
  }
  return s / Mass(2);
}

template <class Y, class Mass>
struct EventDecomposition {
  using Cell = std::tuple<std::uint8_t, std::uint8_t, Y>;  // (b, x, y)
  // Joint of the event bit B with (X, Y).
  FiniteDist<Cell, Mass> with_event;
  Mass pr_b1;

  // P_{B|XY}(1 | x, y); 0 where P_XY(x, y) = 0.
  Mass leak_probability(std::uint8_t x, const Y& y) const {
    const Mass m0 = with_event.prob(Cell(0, x, y));
    const Mass m1 = with_event.prob(Cell(1, x, y));
    const Mass t = m0 + m1;
    return t > Mass(0) ? m1 / t : Mass(0);
  }

  JointBitDist<Y, Mass> given(std::uint8_t b) const {
    auto c = with_event.condition([b](const Cell& c) { return std::get<0>(c) == b; });
    return JointBitDist<Y, Mass>(c.map([](const Cell& c) {
      return std::pair<std::uint8_t, Y>(std::get<1>(c), std::get<2>(c));
    }));
  }

  FiniteDist<std::pair<std::uint8_t, Y>, Mass> reconstruct() const {
    return with_event.map([](const Cell& c) {
      return std::pair<std::uint8_t, Y>(std::get<1>(c), std::get<2>(c));
    });
  }
};

// P_{B|XY}(0|x,y) = min(P(0,y), P(1,y)) / P(x,y): given B = 0, X is unbiased given Y,
// and Pr[B = 1] = pred_adv.
template <class Y, class Mass>
EventDecomposition<Y, Mass> leakage_event_decompose(const JointBitDist<Y, Mass>& j) {
  using Cell = typename EventDecomposition<Y, Mass>::Cell;
  std::vector<std::pair<Cell, Mass>> e;
  Mass b1(0);
  for (const auto& r : j.rows()) {
    const Mass lo = std::min(r.p0, r.p1);
    for (std::uint8_t x = 0; x < 2; ++x) {
      const Mass pxy = x == 0 ? r.p0 : r.p1;
      // mass-zero cells get B = 0
      const Mass keep = pxy > Mass(0) ? lo : Mass(0);
      e.emplace_back(Cell(0, x, r.y), keep);
      e.emplace_back(Cell(1, x, r.y), pxy - keep);
      b1 += pxy - keep;
    }
  }
  return EventDecomposition<Y, Mass>{FiniteDist<Cell, Mass>(std::move(e), false), b1};
}

template <class Mass>
struct BoundCheck {
  Mass lhs;
  Mass rhs;
  bool ok;
};

namespace detail {
template <class Mass>
bool leq_tol(const Mass& a, const Mass& b) {
  if constexpr (MassTraits<Mass>::exact)
    return a <= b;
  else
    return a <= b + 1e-12;
}
}  // namespace detail

// pred_adv(X_0 xor ... xor X_{n-1} | Y^n) <= prod pred_adv(X_i | Y_i) for independent pairs.
template <class Y, class Mass>
BoundCheck<Mass> xor_pred_bound_check(const std::vector<JointBitDist<Y, Mass>>& ds,
                                      std::size_t cap = kDefaultProductCap) {
  if (ds.empty()) throw PreconditionError("xor_pred_bound_check: empty list");
  std::vector<FiniteDist<std::pair<std::uint8_t, Y>, Mass>> joints;
  Mass rhs(1);
  for (const auto& d : ds) {
    joints.push_back(d.joint());
    rhs *= pred_adv(d);
  }
  using Side = std::vector<Y>;
  std::vector<std::pair<std::pair<std::uint8_t, Side>, Mass>> e;
  for_each_combination(joints, cap, [&](const std::vector<std::size_t>& idx, const Mass& m) {
    std::uint8_t x = 0;
    Side ys;
    ys.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& o = joints[i].outcome(idx[i]);
      x ^= o.first;
      ys.push_back(o.second);
    }
    e.emplace_back(std::make_pair(x, std::move(ys)), m);
  });
  JointBitDist<Side, Mass> big(FiniteDist<std::pair<std::uint8_t, Side>, Mass>(std::move(e), false));
  const Mass lhs = pred_adv(big);
  return {lhs, rhs, detail::leq_tol(lhs, rhs)};
}

// pred_adv(X_{n-1} | Y^n, D^{n-1}) <= 1 - prod(1 - pred_adv(X_i | Y_i)), D_i = X_i xor X_{n-1}.
template <class Y, class Mass>
BoundCheck<Mass> or_pred_bound_check(const std::vector<JointBitDist<Y, Mass>>& ds,
                                     std::size_t cap = kDefaultProductCap) {
  if (ds.empty()) throw PreconditionError("or_pred_bound_check: empty list");
  std::vector<FiniteDist<std::pair<std::uint8_t, Y>, Mass>> joints;
  Mass keep(1);
  for (const auto& d : ds) {
    joints.push_back(d.joint());
    keep *= Mass(1) - pred_adv(d);
  }
  const Mass rhs = Mass(1) - keep;
  using Side = std::pair<std::vector<Y>, std::vector<std::uint8_t>>;
  std::vector<std::pair<std::pair<std::uint8_t, Side>, Mass>> e;
  const std::size_t n = ds.size();
  for_each_combination(joints, cap, [&](const std::vector<std::size_t>& idx, const Mass& m) {
    const std::uint8_t last = joints[n - 1].outcome(idx[n - 1]).first;
    Side side;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& o = joints[i].outcome(idx[i]);
      side.first.push_back(o.second);
      if (i + 1 < n) side.second.push_back(static_cast<std::uint8_t>(o.first ^ last));
    }
    e.emplace_back(std::make_pair(last, std::move(side)), m);
  });
  JointBitDist<Side, Mass> big(FiniteDist<std::pair<std::uint8_t, Side>, Mass>(std::move(e), false));
  const Mass lhs = pred_adv(big);
  return {lhs, rhs, detail::leq_tol(lhs, rhs)};
}

using Cube = std::array<std::uint8_t, 3>;

inline std::vector<Cube> cube_points() {
  std::vector<Cube> pts;
  for (std::uint8_t a = 0; a < 2; ++a)
    for (std::uint8_t b = 0; b < 2; ++b)
      for (std::uint8_t c = 0; c < 2; ++c) pts.push_back({a, b, c});
  return pts;
}

// Delta of a distribution on (C, X0, X1) from the uniform cube.
template <class Mass>
Mass three_bit_uniformity_gap(const FiniteDist<Cube, Mass>& d) {
  for (const auto& o : d.domain())
    for (auto b : o)
      if (b > 1) throw DomainMismatch("three_bit_uniformity_gap: outcome outside {0,1}^3");
  return statistical_distance(d.embed(cube_points()), FiniteDist<Cube, Mass>::uniform(cube_points()));
}

}  // namespace otamp::prob
