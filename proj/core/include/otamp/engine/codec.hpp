// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace otamp::engine {

using Bytes = std::vector<std::uint8_t>;

// LEB128 varints; bit strings travel as varints of their packed word.
class Writer {
 public:
  Writer& u(std::uint64_t v);
  Writer& bit(bool b) { return u(b ? 1 : 0); }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

class Reader {
 public:
  explicit Reader(const Bytes& b) : b_(b) {}
  std::uint64_t u();
  // Varint that must be < bound.
  std::uint64_t below(std::uint64_t bound);
  bool bit() { return below(2) != 0; }
  bool done() const { return pos_ == b_.size(); }
  // Throws unless every byte was consumed.
  void finish() const;

 private:
  const Bytes& b_;
  std::size_t pos_ = 0;
};

std::string to_hex(const Bytes& b);
Bytes from_hex(std::string_view s);

// Single-value helpers for the common one-field message.
Bytes pack(std::uint64_t v);
std::uint64_t unpack(const Bytes& b, std::uint64_t bound = 0);

}  // namespace otamp::engine
