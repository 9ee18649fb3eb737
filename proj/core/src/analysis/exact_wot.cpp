// SPDX-License-Identifier: Apache-2.0
#include "otamp/analysis/exact_wot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace otamp::analysis {

namespace {

using Cell = ExactWot::Cell;

std::uint8_t err(const Cell& c) { return c.y ^ (c.c ? c.x1 : c.x0); }

// Rest of a cell apart from one view, packed for sorting.
std::uint64_t rest_key(const Cell& c, bool drop_u) {
  const std::uint64_t bits = (c.x0 << 3) | (c.x1 << 2) | (c.c << 1) | c.y;
  const std::uint64_t view = drop_u ? c.v : c.u;
  return (((view << 20) | (c.aux & 0xfffff)) << 4) | bits;
}

class Interner {
 public:
  std::uint32_t id(std::uint64_t a, std::uint64_t b) {
    auto [it, fresh] = ids_.try_emplace(Key{a, b}, static_cast<std::uint32_t>(ids_.size()));
    (void)fresh;
    return it->second;
  }
  std::uint32_t size() const { return static_cast<std::uint32_t>(ids_.size()); }

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

}  // namespace

double ExactWot::total() const {
  double s = 0;
  for (const auto& c : cells_) s += c.mass;
  return s;
}

ExactWot ExactWot::from_joint(const WotJoint& joint) {
  ExactWot w;
  std::map<std::string, std::uint32_t> us, vs;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const auto& s = joint.outcome(i);
    const auto u = us.try_emplace(s.u, static_cast<std::uint32_t>(us.size())).first->second;
    const auto v = vs.try_emplace(s.v, static_cast<std::uint32_t>(vs.size())).first->second;
    w.cells_.push_back({s.x0, s.x1, s.c, s.y, u, v, 0, joint.mass_at(i)});
  }
  w.nu_ = static_cast<std::uint32_t>(us.size());
  w.nv_ = static_cast<std::uint32_t>(vs.size());
  w.compress();
  return w;
}

ExactWot ExactWot::from_sampler(const primitives::WotSampler& s, unsigned cap_bits) {
  return from_joint(enumerate_sampler(s, cap_bits));
}

void ExactWot::normalize() {
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.u, a.v, a.aux, a.x0, a.x1, a.c, a.y) < std::tie(b.u, b.v, b.aux, b.x0, b.x1, b.c, b.y);
  });
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) {
    if (c.mass <= 0) continue;
    if (!out.empty()) {
      auto& b = out.back();
      if (b.u == c.u && b.v == c.v && b.aux == c.aux && b.x0 == c.x0 && b.x1 == c.x1 && b.c == c.c && b.y == c.y) {
        b.mass += c.mass;
        continue;
      }
    }
    out.push_back(c);
  }
  cells_ = std::move(out);
}

void ExactWot::compress() {
  normalize();
  for (int round = 0; round < 4; ++round) {
    bool changed = false;
    for (bool on_u : {true, false}) {
      const std::uint32_t before = on_u ? nu_ : nv_;
      // Group cells by the view id, posterior of the rest quantised to 2^-40.
      std::map<std::uint32_t, std::vector<std::pair<std::uint64_t, double>>> groups;
      std::map<std::uint32_t, double> mass;
      for (const auto& c : cells_) {
        const auto id = on_u ? c.u : c.v;
        groups[id].emplace_back(rest_key(c, on_u), c.mass);
        mass[id] += c.mass;
      }
      std::map<std::vector<std::pair<std::uint64_t, std::int64_t>>, std::uint32_t> classes;
      std::unordered_map<std::uint32_t, std::uint32_t> remap;
      for (auto& [id, g] : groups) {
        std::sort(g.begin(), g.end());
        std::vector<std::pair<std::uint64_t, std::int64_t>> key;
        key.reserve(g.size());
        for (const auto& [k, m] : g) {
          if (!key.empty() && key.back().first == k) {
            key.back().second += std::llround(std::ldexp(m / mass[id], 40));
            continue;
          }
          key.emplace_back(k, std::llround(std::ldexp(m / mass[id], 40)));
        }
        remap[id] = classes.try_emplace(std::move(key), static_cast<std::uint32_t>(classes.size())).first->second;
      }
      for (auto& c : cells_) (on_u ? c.u : c.v) = remap.at(on_u ? c.u : c.v);
      const auto after = static_cast<std::uint32_t>(classes.size());
      (on_u ? nu_ : nv_) = after;
      changed = changed || after != before;
      normalize();
    }
    if (!changed) break;
  }
}

ExactWot ExactWot::rotor() const {
  ExactWot w;
  w.cells_.reserve(cells_.size());
  for (const auto& c : cells_) {
    Cell o = c;
    std::tie(o.c, o.y) = reductions::rotor::from_sender(c.x0, c.x1);
    std::tie(o.x0, o.x1) = reductions::rotor::from_receiver(c.c, c.y);
    o.u = c.v;
    o.v = c.u;
    w.cells_.push_back(o);
  }
  w.nu_ = nv_;
  w.nv_ = nu_;
  return w;
}

ExactWot ExactWot::r_reduce(const std::vector<ExactWot>& in, std::uint64_t cap) {
  if (in.empty()) throw PreconditionError("R-Reduce needs n >= 1");
  // Left fold of the two-instance step; views keep both children's views,
  // their error bits and d, which determine the n-instance views.
  ExactWot acc = in[0];
  for (std::size_t i = 1; i < in.size(); ++i) {
    check_cap(acc.cells_.size(), in[i].cells_.size(), cap);
    ExactWot w;
    Interner iu, iv;
    w.cells_.reserve(acc.cells_.size() * in[i].cells_.size());
    for (const auto& p : acc.cells_)
      for (const auto& q : in[i].cells_) {
        const std::uint8_t d = p.c ^ q.c;
        Cell o;
        o.x0 = (d ? p.x1 : p.x0) ^ q.x0;
        o.x1 = (d ? p.x0 : p.x1) ^ q.x1;
        o.c = q.c;
        o.y = p.y ^ q.y;
        o.aux = 0;
        o.mass = p.mass * q.mass;
        const std::uint64_t ea = err(p), eb = err(q);
        o.u = iu.id((std::uint64_t{p.u} << 2) | (ea << 1) | d, (std::uint64_t{q.u} << 1) | eb);
        o.v = iv.id((std::uint64_t{p.v} << 1) | ea, (std::uint64_t{q.v} << 1) | eb);
        w.cells_.push_back(o);
      }
    w.nu_ = iu.size();
    w.nv_ = iv.size();
    w.compress();
    acc = std::move(w);
  }
  return acc;
}

ExactWot ExactWot::s_reduce(const std::vector<ExactWot>& in, std::uint64_t cap) {
  std::vector<ExactWot> flipped;
  flipped.reserve(in.size());
  for (const auto& w : in) flipped.push_back(w.rotor());
  return r_reduce(flipped, cap).rotor();
}

ExactWot ExactWot::e_reduce(const std::vector<ExactWot>& in, std::uint64_t cap) {
  if (in.empty() || in.size() % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
  const std::size_t n = in.size();
  if (n == 1) return in[0];
  // Fold the other instances into the anchor (instance n-1), tallying
  // the decoded bits in aux.
  ExactWot acc;
  {
    Interner iu, iv;
    for (const auto& c : in.back().cells_) {
      Cell o = c;
      o.aux = c.y;
      o.u = iu.id(c.u, err(c));
      o.v = iv.id(c.v, err(c));
      acc.cells_.push_back(o);
    }
    acc.nu_ = iu.size();
    acc.nv_ = iv.size();
    acc.compress();
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    check_cap(acc.cells_.size(), in[i].cells_.size(), cap);
    ExactWot w;
    Interner iu, iv;
    w.cells_.reserve(acc.cells_.size() * in[i].cells_.size());
    for (const auto& s : acc.cells_)
      for (const auto& q : in[i].cells_) {
        const std::uint8_t d = s.c ^ q.c;
        const std::uint8_t s0 = (d ? q.x1 : q.x0) ^ s.x0;
        const std::uint8_t s1 = (d ? q.x0 : q.x1) ^ s.x1;
        const std::uint8_t ybar = q.y ^ (s.c ? s1 : s0);
        Cell o = s;
        o.aux = s.aux + ybar;
        o.mass = s.mass * q.mass;
        const std::uint64_t e = err(q);
        o.u = iu.id((std::uint64_t{s.u} << 2) | (e << 1) | d, q.u);
        o.v = iv.id((std::uint64_t{s.v} << 3) | (e << 2) | (s0 << 1) | s1, q.v);
        w.cells_.push_back(o);
      }
    w.nu_ = iu.size();
    w.nv_ = iv.size();
    w.compress();
    acc = std::move(w);
  }
  for (auto& c : acc.cells_) {
    c.y = 2 * c.aux > n ? 1 : 0;
    c.aux = 0;
  }
  acc.compress();
  return acc;
}

ExactWot ExactWot::apply(const reductions::ReductionStep& step, const std::vector<ExactWot>& in, std::uint64_t cap) {
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

WotParams ExactWot::measure() const { return measure_wot_params(to_joint()); }

WotJoint ExactWot::to_joint() const {
  std::vector<std::pair<WotSample, double>> e;
  e.reserve(cells_.size());
  for (const auto& c : cells_) {
    WotSample s;
    s.x0 = c.x0;
    s.x1 = c.x1;
    s.c = c.c;
    s.y = c.y;
    s.u = "u" + std::to_string(c.u);
    s.v = "v" + std::to_string(c.v);
    e.emplace_back(std::move(s), c.mass);
  }
  return WotJoint(std::move(e), false);
}

}  // namespace otamp::analysis
