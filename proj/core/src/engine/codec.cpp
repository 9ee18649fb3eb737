// SPDX-License-Identifier: Apache-2.0
#include "otamp/engine/codec.hpp"

#include "otamp/common/errors.hpp"

namespace otamp::engine {

Writer& Writer::u(std::uint64_t v) {
  do {
    std::uint8_t byte = v & 0x7f;
    v >>= 7;
    if (v) byte |= 0x80;
    buf_.push_back(byte);
  } while (v);
  return *this;
}

std::uint64_t Reader::u() {
  std::uint64_t v = 0;
  for (unsigned shift = 0; shift < 64; shift += 7) {
    if (pos_ >= b_.size()) throw ProtocolError("message truncated");
    const std::uint8_t byte = b_[pos_++];
    v |= std::uint64_t{byte & 0x7fu} << shift;
    if (!(byte & 0x80)) return v;
  }
  throw ProtocolError("varint too long");
}

std::uint64_t Reader::below(std::uint64_t bound) {
  const auto v = u();
  if (v >= bound) throw ProtocolError("field out of range: " + std::to_string(v));
  return v;
}

void Reader::finish() const {
  if (!done()) throw ProtocolError("trailing bytes in message");
}

std::string to_hex(const Bytes& b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * b.size());
  for (auto x : b) {
    s.push_back(kDigits[x >> 4]);
    s.push_back(kDigits[x & 15]);
  }
  return s;
}

Bytes from_hex(std::string_view s) {
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw PreconditionError("bad hex digit");
  };
  if (s.size() % 2) throw PreconditionError("odd hex length");
  Bytes b;
  for (std::size_t i = 0; i < s.size(); i += 2) b.push_back(static_cast<std::uint8_t>(nib(s[i]) * 16 + nib(s[i + 1])));
  return b;
}

Bytes pack(std::uint64_t v) { return Writer().u(v).take(); }

std::uint64_t unpack(const Bytes& b, std::uint64_t bound) {
  Reader r(b);
  const auto v = bound ? r.below(bound) : r.u();
  r.finish();
  return v;
}

}  // namespace otamp::engine
