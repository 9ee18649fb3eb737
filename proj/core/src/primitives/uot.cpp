// SPDX-License-Identifier: Apache-2.0
#include "otamp/primitives/uot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "otamp/hashing/entropy.hpp"

namespace otamp::primitives {

using engine::Bytes;
using engine::Role;

void UotSpec::validate() const {
  if (n < 1 || n > 31) throw PreconditionError("UOT string length must be in [1, 31]");
  if (!(alpha > 0 && alpha <= 2.0 * n)) throw PreconditionError("UOT needs 0 < alpha <= 2n");
}

namespace {
std::uint64_t full_mask(unsigned n) { return (std::uint64_t{1} << (2 * n)) - 1; }

// Scatter the low popcount(mask) bits of w into the positions of mask.
std::uint64_t deposit(std::uint64_t w, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    if (w & 1) out |= m & -m;
    w >>= 1;
  }
  return out;
}
}  // namespace

UotAdversary UotAdversary::table(unsigned n, prob::FiniteDist<std::uint64_t> dist) {
  UotSpec{n, 1}.validate();
  for (const auto& x : dist.domain())
    if (x & ~full_mask(n)) throw PreconditionError("UOT table entry exceeds 2n bits");
  UotAdversary a;
  a.n_ = n;
  a.table_ = std::move(dist);
  return a;
}

UotAdversary UotAdversary::fixed_bits(unsigned n, std::uint64_t free_mask, std::uint64_t fixed_values) {
  return function_of(n, free_mask, [fixed_values](std::uint64_t) { return fixed_values; });
}

UotAdversary UotAdversary::function_of(unsigned n, std::uint64_t free_mask, DependentFn f) {
  UotSpec{n, 1}.validate();
  if (free_mask & ~full_mask(n)) throw PreconditionError("free mask exceeds 2n bits");
  UotAdversary a;
  a.n_ = n;
  a.free_mask_ = free_mask;
  a.dep_ = std::move(f);
  return a;
}

std::uint64_t UotAdversary::assemble(std::uint64_t free_word) const {
  const std::uint64_t free_part = deposit(free_word, free_mask_);
  return free_part | (dep_(free_part) & full_mask(n_) & ~free_mask_);
}

double UotAdversary::min_entropy() const {
  if (table_) return hashing::min_entropy(*table_);
  return std::popcount(free_mask_);
}

prob::FiniteDist<std::uint64_t> UotAdversary::distribution(std::uint64_t cap) const {
  if (table_) return *table_;
  const unsigned k = std::popcount(free_mask_);
  if (k > 63 || (std::uint64_t{1} << k) > cap) throw CapExceeded("structured UOT family too large to expand");
  std::vector<std::pair<std::uint64_t, double>> cells;
  const double w = std::ldexp(1.0, -static_cast<int>(k));
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << k); ++f) cells.emplace_back(assemble(f), w);
  return prob::FiniteDist<std::uint64_t>(std::move(cells));
}

std::uint64_t UotAdversary::sample(engine::RandomSource& rng) const {
  if (!table_) return assemble(rng.bits(std::popcount(free_mask_)));
  const auto& d = *table_;
  if (auto* tape = dynamic_cast<engine::TapeSource*>(&rng)) {
    // Walk the table as a chain of binary choices so tape weights stay exact.
    double rest = 1;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      const double m = prob::to_double(d.mass_at(i));
      if (tape->bernoulli(std::clamp(m / rest, 0.0, 1.0))) return d.outcome(i);
      rest -= m;
    }
    return d.outcome(d.size() - 1);
  }
  double r = static_cast<double>(rng.bits(53)) * 0x1.0p-53;
  for (std::size_t i = 0; i < d.size(); ++i) {
    r -= prob::to_double(d.mass_at(i));
    if (r < 0) return d.outcome(i);
  }
  return d.outcome(d.size() - 1);
}

UotFunctionality::UotFunctionality(UotSpec spec, std::optional<UotAdversary> adversary)
    : spec_(spec), adv_(std::move(adversary)) {
  spec_.validate();
  if (adv_) {
    if (adv_->n() != spec_.n) throw PreconditionError("adversary string length differs from UOT spec");
    if (adv_->min_entropy() < spec_.alpha - 1e-9)
      throw PremiseViolation("UOT adversary distribution has min-entropy " + std::to_string(adv_->min_entropy()) +
                             " < alpha = " + std::to_string(spec_.alpha));
  }
}

void UotFunctionality::on_input(Role from, const Bytes&, engine::FunctionalityContext& fx) {
  bool& got = from == Role::A ? got_a_ : got_b_;
  if (got) throw FunctionalityReuse("UOT instance '" + fx.slot() + "' used twice");
  got = true;
  if (!(got_a_ && got_b_)) return;
  const auto& cm = fx.corruption();
  if (cm.malicious(Role::A)) throw PreconditionError("UOT models a malicious receiver only");
  auto& rng = fx.rng();
  const unsigned n = spec_.n;
  if (cm.malicious(Role::B)) {
    if (!adv_) throw PreconditionError("malicious receiver needs an adversary distribution");
    const auto w = adv_->sample(rng);
    fx.deliver(Role::A, engine::Writer().u(pair_lo(w, n)).u(pair_hi(w, n)).take());
    return;
  }
  const auto x0 = rng.bits(n), x1 = rng.bits(n);
  const auto c = rng.uniform(2);
  fx.deliver(Role::A, engine::Writer().u(x0).u(x1).take());
  fx.deliver(Role::B, engine::Writer().u(c).u(c ? x1 : x0).take());
}

engine::FunctionalityFactory uot_factory(UotSpec spec, std::optional<UotAdversary> adversary) {
  UotFunctionality probe(spec, adversary);
  return [spec, adversary] { return std::make_unique<UotFunctionality>(spec, adversary); };
}

}  // namespace otamp::primitives
