// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "otamp/engine/session.hpp"

namespace otamp::engine {

const char* kind_tag(View::Kind k) {
  switch (k) {
    case View::Kind::Input: return "in";
    case View::Kind::Random: return "rnd";
    case View::Kind::Sent: return "snd";
    case View::Kind::Received: return "rcv";
    case View::Kind::Aux: return "aux";
    case View::Kind::Output: return "out";
  }
  return "?";
}

namespace {
void append(std::string& s, const View::Entry& e) {
  s += kind_tag(e.kind);
  s += ':';
  s += e.label;
  s += '=';
  s += e.value;
  s += ';';
}
}  // namespace

std::string View::key() const {
  std::string s;
  for (const auto& e : entries_) append(s, e);
  return s;
}

std::string View::key(std::initializer_list<Kind> kinds) const {
  std::string s;
  for (const auto& e : entries_)
    for (auto k : kinds)
      if (e.kind == k) {
        append(s, e);
        break;
      }
  return s;
}

std::vector<std::string> View::find(std::string_view label) const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.label == label) out.push_back(e.value);
  return out;
}

std::uint64_t Transcript::out(Role r, const std::string& name) const {
  const auto& o = outputs(r);
  auto it = o.find(name);
  if (it == o.end()) throw ProtocolError(std::string("party ") + role_name(r) + " has no output '" + name + "'");
  return it->second;
}

std::string Transcript::to_text() const {
  std::string s;
  for (const auto& e : log) {
    s += e.direction;
    s += ' ';
    s += std::to_string(e.step);
    s += ' ';
    s += e.payload.empty() ? std::string("-") : to_hex(e.payload);
    s += '\n';
  }
  return s;
}

std::vector<LogEntry> parse_log(std::string_view text) {
  std::vector<LogEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    LogEntry e;
    std::string hex;
    if (!(ls >> e.direction >> e.step >> hex)) throw PreconditionError("bad transcript line: " + line);
    if (hex != "-") e.payload = from_hex(hex);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace otamp::engine
