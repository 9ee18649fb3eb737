// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/marginal_wot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace otamp::analysis {

namespace {

using Cell = MarginalWot::Cell;

std::uint64_t err(const Cell& c) { return c.y ^ (c.c ? c.x1 : c.x0); }
std::uint64_t bits(const Cell& c) { return (c.x0 << 3) | (c.x1 << 2) | (c.c << 1) | c.y; }

class Interner {
 public:
  std::uint32_t id(std::uint64_t a, std::uint64_t b) {
    return ids_.try_emplace(Key{a, b}, static_cast<std::uint32_t>(ids_.size())).first->second;
  }

 private:
  struct Key {
    std::uint64_t a, b;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.a * 0x9e3779b97f4a7c15ULL ^ k.b); }
  };
  std::unordered_map<Key, std::uint32_t, Hash> ids_;
};

void check_cap(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (static_cast<long double>(a) * b > cap) throw CapExceeded("exact WOT composition exceeds cap");
}

void normalize(std::vector<Cell>& side) {
  std::sort(side.begin(), side.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.view, a.aux, a.x0, a.x1, a.c, a.y) < std::tie(b.view, b.aux, b.x0, b.x1, b.c, b.y);
  });
  std::vector<Cell> out;
  out.reserve(side.size());
  for (const auto& c : side) {
    if (c.mass <= 0) continue;
    if (!out.empty()) {
      auto& b = out.back();
      if (b.view == c.view && b.aux == c.aux && bits(b) == bits(c)) {
        b.mass += c.mass;
        continue;
      }
    }
    out.push_back(c);
  }
  side = std::move(out);
}

// Two-instance R-Reduce on one side. The parent view holds both child
// views, the party's own child outputs, the error bits and, for A, d.
std::vector<Cell> fold_pair(const std::vector<Cell>& acc, const std::vector<Cell>& in, bool sender) {
  std::vector<Cell> out;
  out.reserve(acc.size() * in.size());
  Interner ids;
  for (const auto& p : acc)
    for (const auto& q : in) {
      const std::uint8_t d = p.c ^ q.c;
      Cell o;
      o.x0 = (d ? p.x1 : p.x0) ^ q.x0;
      o.x1 = (d ? p.x0 : p.x1) ^ q.x1;
      o.c = q.c;
      o.y = p.y ^ q.y;
      o.aux = 0;
      o.mass = p.mass * q.mass;
      if (sender)
        o.view = ids.id((std::uint64_t{p.view} << 8) | (std::uint64_t{p.x0} << 4) | (std::uint64_t{p.x1} << 3) |
                            (err(p) << 2) | d,
                        (std::uint64_t{q.view} << 8) | (std::uint64_t{q.x0} << 4) | (std::uint64_t{q.x1} << 3) |
                            (err(q) << 2));
      else
        o.view = ids.id((std::uint64_t{p.view} << 8) | (std::uint64_t{p.c} << 4) | (std::uint64_t{p.y} << 3) |
                            (err(p) << 2),
                        (std::uint64_t{q.view} << 8) | (std::uint64_t{q.c} << 4) | (std::uint64_t{q.y} << 3) |
                            (err(q) << 2));
      out.push_back(o);
    }
  return out;
}

}  // namespace

void MarginalWot::compress(std::vector<Cell>& side) {
  normalize(side);
  // Cells are sorted by view, so each view's posterior is a contiguous run.
  std::map<std::vector<std::pair<std::uint64_t, std::int64_t>>, std::uint32_t> classes;
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  for (std::size_t i = 0; i < side.size();) {
    std::size_t j = i;
    double mass = 0;
    while (j < side.size() && side[j].view == side[i].view) mass += side[j++].mass;
    std::vector<std::pair<std::uint64_t, std::int64_t>> key;
    key.reserve(j - i);
    for (std::size_t k = i; k < j; ++k)
      key.emplace_back((std::uint64_t{side[k].aux} << 4) | bits(side[k]),
                       std::llround(std::ldexp(side[k].mass / mass, 40)));
    remap[side[i].view] = classes.try_emplace(std::move(key), static_cast<std::uint32_t>(classes.size())).first->second;
    i = j;
  }
  for (auto& c : side) c.view = remap.at(c.view);
  normalize(side);
}

MarginalWot MarginalWot::from_joint(const WotJoint& joint) {
  MarginalWot w;
  std::map<std::string, std::uint32_t> us, vs;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const auto& s = joint.outcome(i);
    const auto u = us.try_emplace(s.u, static_cast<std::uint32_t>(us.size())).first->second;
    const auto v = vs.try_emplace(s.v, static_cast<std::uint32_t>(vs.size())).first->second;
    w.a_.push_back({s.x0, s.x1, s.c, s.y, u, 0, joint.mass_at(i)});
    w.b_.push_back({s.x0, s.x1, s.c, s.y, v, 0, joint.mass_at(i)});
  }
  compress(w.a_);
  compress(w.b_);
  return w;
}

MarginalWot MarginalWot::from_sampler(const primitives::WotSampler& s, unsigned cap_bits) {
  return from_joint(enumerate_sampler(s, cap_bits));
}

MarginalWot MarginalWot::rotor() const {
  const auto flip = [](const std::vector<Cell>& side) {
    std::vector<Cell> out;
    out.reserve(side.size());
    for (const auto& c : side) {
      Cell o = c;
      std::tie(o.c, o.y) = reductions::rotor::from_sender(c.x0, c.x1);
      std::tie(o.x0, o.x1) = reductions::rotor::from_receiver(c.c, c.y);
      out.push_back(o);
    }
    return out;
  };
  MarginalWot w;
  w.a_ = flip(b_);
  w.b_ = flip(a_);
  return w;
}

MarginalWot MarginalWot::r_reduce(const std::vector<MarginalWot>& in, std::uint64_t cap) {
  if (in.empty()) throw PreconditionError("R-Reduce needs n >= 1");
  MarginalWot acc = in[0];
  for (std::size_t i = 1; i < in.size(); ++i) {
    check_cap(acc.a_.size(), in[i].a_.size(), cap);
    check_cap(acc.b_.size(), in[i].b_.size(), cap);
    MarginalWot w;
    w.a_ = fold_pair(acc.a_, in[i].a_, true);
    w.b_ = fold_pair(acc.b_, in[i].b_, false);
    compress(w.a_);
    compress(w.b_);
    acc = std::move(w);
  }
  return acc;
}

MarginalWot MarginalWot::s_reduce(const std::vector<MarginalWot>& in, std::uint64_t cap) {
  std::vector<MarginalWot> flipped;
  flipped.reserve(in.size());
  for (const auto& w : in) flipped.push_back(w.rotor());
  return r_reduce(flipped, cap).rotor();
}

MarginalWot MarginalWot::e_reduce(const std::vector<MarginalWot>& in, std::uint64_t cap) {
  if (in.empty() || in.size() % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
  const std::size_t n = in.size();
  if (n == 1) return in[0];
  // Fold the other instances into the anchor (instance n-1), tallying the
  // decoded bits in aux.
  MarginalWot acc;
  for (bool sender : {true, false}) {
    Interner ids;
    auto& side = sender ? acc.a_ : acc.b_;
    for (const auto& c : sender ? in.back().a_ : in.back().b_) {
      Cell o = c;
      o.aux = c.y;
      const std::uint64_t own = sender ? (c.x0 << 1) | c.x1 : (c.c << 1) | c.y;
      o.view = ids.id(c.view, (own << 1) | err(c));
      side.push_back(o);
    }
    compress(side);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    MarginalWot w;
    for (bool sender : {true, false}) {
      const auto& from = sender ? acc.a_ : acc.b_;
      const auto& child = sender ? in[i].a_ : in[i].b_;
      check_cap(from.size(), child.size(), cap);
      auto& side = sender ? w.a_ : w.b_;
      side.reserve(from.size() * child.size());
      Interner ids;
      for (const auto& s : from)
        for (const auto& q : child) {
          const std::uint8_t d = s.c ^ q.c;
          const std::uint8_t s0 = (d ? q.x1 : q.x0) ^ s.x0;
          const std::uint8_t s1 = (d ? q.x0 : q.x1) ^ s.x1;
          const std::uint8_t ybar = q.y ^ (s.c ? s1 : s0);
          Cell o = s;
          o.aux = s.aux + ybar;
          o.mass = s.mass * q.mass;
          const std::uint64_t e = err(q);
          if (sender)
            o.view = ids.id((std::uint64_t{s.view} << 8) | (std::uint64_t{q.x0} << 4) | (std::uint64_t{q.x1} << 3) |
                                (e << 2) | d,
                            q.view);
          else
            o.view = ids.id((std::uint64_t{s.view} << 8) | (std::uint64_t{q.c} << 5) | (std::uint64_t{q.y} << 4) |
                                (e << 2) | (std::uint64_t{s0} << 1) | s1,
                            q.view);
          side.push_back(o);
        }
      compress(side);
    }
    acc = std::move(w);
  }
  for (auto* side : {&acc.a_, &acc.b_}) {
    for (auto& c : *side) {
      c.y = 2 * c.aux > n ? 1 : 0;
      c.aux = 0;
    }
    compress(*side);
  }
  return acc;
}

MarginalWot MarginalWot::apply(const reductions::ReductionStep& step, const std::vector<MarginalWot>& in,
                               std::uint64_t cap) {
  using reductions::StepKind;
  step.validate();
  if (in.size() != step.arity()) throw PreconditionError(step.name() + ": wrong number of children");
  switch (step.kind) {
    case StepKind::Rotor: return in[0].rotor();
    case StepKind::RReduce: return r_reduce(in, cap);
    case StepKind::SReduce: return s_reduce(in, cap);
    case StepKind::EReduce: return e_reduce(in, cap);
    default: throw PreconditionError(step.name() + " does not act on WOT instances");
  }
}

MarginalWot MarginalWot::apply_power(const reductions::ReductionStep& step, const MarginalWot& w, std::uint64_t cap) {
  return apply(step, std::vector<MarginalWot>(step.arity(), w), cap);
}

WotParams MarginalWot::measure() const {
  // predadv(Z | W) = 2 sum_w max_z P(z, w) - 1, summed over (view, e).
  const auto advantage = [](const std::vector<Cell>& side, bool choice) {
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::pair<double, double>> by;
    for (const auto& c : side) {
      const std::uint8_t z = choice ? c.c : (c.c ? c.x0 : c.x1);
      auto& m = by[{c.view, err(c)}];
      (z ? m.second : m.first) += c.mass;
    }
    double s = 0;
    for (const auto& [k, m] : by) s += std::max(m.first, m.second);
    return std::clamp(2 * s - 1, 0.0, 1.0);
  };
  WotParams w;
  for (const auto& c : a_)
    if (err(c)) w.eps += c.mass;
  w.p = advantage(a_, true);
  w.q = advantage(b_, false);
  return w;
}

}  // namespace otamp::analysis
