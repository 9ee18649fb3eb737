// SPDX-License-Identifier: Apache-2.0
#include "otamp/reductions/logic.hpp"

#include "otamp/common/errors.hpp"

namespace otamp::reductions {

const char* kind_name(StepKind k) {
  switch (k) {
    case StepKind::RotFromOt: return "rot_from_ot";
    case StepKind::OtFromRot: return "ot_from_rot";
    case StepKind::Rotor: return "rotor";
    case StepKind::RotFromUot: return "rot_from_uot";
    case StepKind::RReduce: return "r_reduce";
    case StepKind::SReduce: return "s_reduce";
    case StepKind::EReduce: return "e_reduce";
  }
  return "?";
}

StepKind parse_kind(const std::string& s) {
  for (auto k : {StepKind::RotFromOt, StepKind::OtFromRot, StepKind::Rotor, StepKind::RotFromUot, StepKind::RReduce,
                 StepKind::SReduce, StepKind::EReduce})
    if (s == kind_name(k)) return k;
  throw PreconditionError("unknown reduction kind: " + s);
}

unsigned ReductionStep::arity() const {
  switch (kind) {
    case StepKind::RReduce:
    case StepKind::SReduce:
    case StepKind::EReduce: return n;
    default: return 1;
  }
}

void ReductionStep::validate() const {
  switch (kind) {
    case StepKind::RReduce:
    case StepKind::SReduce:
      if (n < 1) throw PreconditionError("reduce needs n >= 1");
      break;
    case StepKind::EReduce:
      if (n < 1 || n % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
      break;
    case StepKind::RotFromUot:
      if (ell < 1) throw PreconditionError("ROTfromUOT needs ell >= 1");
      break;
    default: break;
  }
}

std::string ReductionStep::name() const {
  const std::string base = kind_name(kind);
  if (arity() > 1 || kind == StepKind::RReduce || kind == StepKind::SReduce || kind == StepKind::EReduce)
    return base + "(" + std::to_string(n) + ")";
  return base;
}

namespace rreduce {

Bits directions(const Bits& c) {
  if (c.empty()) throw PreconditionError("no instances");
  Bits d(c.size(), 0);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) d[i] = c.back() ^ c[i];
  return d;
}

std::pair<std::uint8_t, std::uint8_t> sender_output(const Bits& x0, const Bits& x1, const Bits& d) {
  std::uint8_t a = 0, b = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    a ^= d[i] ? x1[i] : x0[i];
    b ^= d[i] ? x0[i] : x1[i];
  }
  return {a, b};
}

std::uint8_t receiver_output(const Bits& y) {
  std::uint8_t r = 0;
  for (auto b : y) r ^= b;
  return r;
}

}  // namespace rreduce

namespace ereduce {

std::pair<Bits, Bits> masks(const Bits& x0, const Bits& x1, const Bits& d) {
  const std::size_t n = d.size();
  Bits s0(n - 1), s1(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s0[i] = (d[i] ? x1[i] : x0[i]) ^ x0[n - 1];
    s1[i] = (d[i] ? x0[i] : x1[i]) ^ x1[n - 1];
  }
  return {s0, s1};
}

std::uint8_t decode(const Bits& y, const Bits& s0, const Bits& s1, std::uint8_t c_last) {
  const std::size_t n = y.size();
  if (n % 2 == 0) throw PreconditionError("E-Reduce needs odd n");
  std::size_t ones = y[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) ones += y[i] ^ (c_last ? s1[i] : s0[i]);
  return ones * 2 > n ? 1 : 0;
}

}  // namespace ereduce

namespace otrot {

std::vector<std::uint64_t> masks(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& x_rot,
                                 std::uint64_t d) {
  const std::size_t n = x.size();
  std::vector<std::uint64_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = x[i] ^ x_rot[(i + d) % n];
  return m;
}

}  // namespace otrot

}  // namespace otamp::reductions
