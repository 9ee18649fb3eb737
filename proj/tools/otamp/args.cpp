// SPDX-License-Identifier: Apache-2.0
#include "args.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace otamp::cli {

namespace {

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw PreconditionError("not an integer: " + s);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

double parse_probability(const std::string& s) {
  double v = 0;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::uint64_t num = parse_uint(s.substr(0, slash));
    std::string den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
      const std::uint64_t m = parse_uint(den.substr(2));
      if (m > 62) throw PreconditionError("dyadic exponent too large: " + s);
      v = std::ldexp(static_cast<double>(num), -static_cast<int>(m));
    } else {
      const std::uint64_t d = parse_uint(den);
      if (d == 0 || (d & (d - 1)) != 0) throw PreconditionError("denominator must be a power of two: " + s);
      v = static_cast<double>(num) / static_cast<double>(d);
    }
  } else {
    std::size_t used = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw PreconditionError("not a probability: " + s);
    }
    if (used != s.size()) throw PreconditionError("not a probability: " + s);
  }
  if (!(v >= 0 && v <= 1)) throw PreconditionError("probability outside [0, 1]: " + s);
  return v;
}

primitives::WotSampler SourceSpec::sampler() const {
  switch (kind) {
    case Kind::Event: return primitives::event_model_sampler(params.p, params.q, params.eps);
    case Kind::SimWot: return primitives::simwot_sampler(params.p, params.q);
    case Kind::Batch: break;
  }
  throw PreconditionError("a batch source has no sampler");
}

std::string SourceSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Event: os << "event:" << params.p << ',' << params.q << ',' << params.eps; break;
    case Kind::SimWot: os << "simwot:" << params.p << ',' << params.q; break;
    case Kind::Batch: os << "batch:" << path; break;
  }
  return os.str();
}

SourceSpec parse_source(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw PreconditionError("source must look like kind:args, got " + s);
  const std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  SourceSpec src{SourceSpec::Kind::Event, {}, {}};
  if (kind == "batch") {
    src.kind = SourceSpec::Kind::Batch;
    src.path = rest;
    return src;
  }
  const auto parts = split(rest, ',');
  std::vector<double> v;
  for (const auto& x : parts) v.push_back(parse_probability(x));
  if (kind == "event") {
    if (v.size() != 3) throw PreconditionError("event source needs p,q,eps");
    src.params = {v[0], v[1], v[2]};
  } else if (kind == "simwot") {
    if (v.size() != 2) throw PreconditionError("simwot source needs p,q");
    if (v[0] + v[1] > 1) throw PreconditionError("simwot source needs p + q <= 1");
    src.kind = SourceSpec::Kind::SimWot;
    src.params = {v[0], v[1], (1 - v[0] - v[1]) / 2};
  } else {
    throw PreconditionError("unknown source kind: " + kind);
  }
  return src;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

}  // namespace otamp::cli
