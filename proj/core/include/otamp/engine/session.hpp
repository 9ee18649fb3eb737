// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <coroutine>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otamp/common/errors.hpp"
#include "otamp/engine/codec.hpp"
#include "otamp/engine/rng.hpp"
#include "otamp/prob/finite_dist.hpp"

namespace otamp::engine {

enum class Role { A, B };
inline Role other(Role r) { return r == Role::A ? Role::B : Role::A; }
inline const char* role_name(Role r) { return r == Role::A ? "A" : "B"; }

inline constexpr std::string_view kComm = "comm";

// One party's auxiliary record: everything it saw, drew, sent and output.
class View {
 public:
  enum class Kind { Input, Random, Sent, Received, Aux, Output };
  struct Entry {
    Kind kind;
    std::string label;
    std::string value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  void add(Kind k, std::string label, std::string value) {
    entries_.push_back({k, std::move(label), std::move(value)});
  }
  const std::vector<Entry>& entries() const { return entries_; }
  // Canonical whitespace-free serialisation, used as a conditioning key.
  std::string key() const;
  // Key restricted to the given kinds.
  std::string key(std::initializer_list<Kind> kinds) const;
  // All values recorded under `label`, in order.
  std::vector<std::string> find(std::string_view label) const;

  friend bool operator==(const View&, const View&) = default;

 private:
  std::vector<Entry> entries_;
};

const char* kind_tag(View::Kind k);

struct LogEntry {
  std::string direction;  // "A>B", "A>F:ot0", "F:ot0>B"
  std::size_t step;
  Bytes payload;
  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

using Outputs = std::map<std::string, std::uint64_t>;

struct Transcript {
  std::vector<LogEntry> log;
  View u;  // A's auxiliary view
  View v;  // B's auxiliary view
  bool u_exposed = false;
  bool v_exposed = false;
  Outputs out_a;
  Outputs out_b;

  const View& view(Role r) const { return r == Role::A ? u : v; }
  const Outputs& outputs(Role r) const { return r == Role::A ? out_a : out_b; }
  std::uint64_t out(Role r, const std::string& name) const;

  // One line per message: "<direction> <step> <hex or ->".
  std::string to_text() const;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

std::vector<LogEntry> parse_log(std::string_view text);

class PartyContext;

class PartyTask {
 public:
  struct promise_type {
    std::exception_ptr error;
    PartyTask get_return_object() { return PartyTask(std::coroutine_handle<promise_type>::from_promise(*this)); }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    void return_void() {}
    void unhandled_exception() { error = std::current_exception(); }
  };

  PartyTask() = default;
  explicit PartyTask(std::coroutine_handle<promise_type> h) : h_(h) {}
  PartyTask(PartyTask&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  PartyTask& operator=(PartyTask&& o) noexcept {
    if (this != &o) {
      if (h_) h_.destroy();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  PartyTask(const PartyTask&) = delete;
  PartyTask& operator=(const PartyTask&) = delete;
  ~PartyTask() {
    if (h_) h_.destroy();
  }

  bool valid() const { return static_cast<bool>(h_); }
  bool done() const { return h_.done(); }
  void resume();

 private:
  std::coroutine_handle<promise_type> h_;
};

enum class Behaviour { Honest, SemiHonest, Malicious };

using PartyProgram = std::function<PartyTask(PartyContext&)>;

// Per-party behaviour. Semi-honest and malicious parties expose their view;
// a malicious party runs its strategy in place of the honest program.
struct CorruptionMode {
  Behaviour a = Behaviour::Honest;
  Behaviour b = Behaviour::Honest;
  PartyProgram strategy_a;
  PartyProgram strategy_b;

  static CorruptionMode honest() { return {}; }
  static CorruptionMode semi_honest(Role r);
  static CorruptionMode semi_honest_both();
  static CorruptionMode malicious(Role r, PartyProgram strategy);

  Behaviour of(Role r) const { return r == Role::A ? a : b; }
  bool corrupt(Role r) const { return of(r) != Behaviour::Honest; }
  bool malicious(Role r) const { return of(r) == Behaviour::Malicious; }
};

class Session;

class FunctionalityContext {
 public:
  void deliver(Role to, Bytes payload);
  RandomSource& rng();
  const CorruptionMode& corruption() const;
  const std::string& slot() const { return slot_; }

 private:
  friend class Session;
  FunctionalityContext(Session& s, std::string slot) : s_(s), slot_(std::move(slot)) {}
  Session& s_;
  std::string slot_;
};

// Ideal sub-system reachable on a named slot. Instances are one-shot:
// inputs beyond the definition's single round raise FunctionalityReuse.
class Functionality {
 public:
  virtual ~Functionality() = default;
  virtual std::string kind() const = 0;
  virtual void on_input(Role from, const Bytes& payload, FunctionalityContext& fx) = 0;
};

using FunctionalityFactory = std::function<std::unique_ptr<Functionality>()>;

struct SessionSpec {
  PartyProgram a;
  PartyProgram b;
  std::vector<std::pair<std::string, FunctionalityFactory>> slots;
  CorruptionMode corruption;

  SessionSpec& slot(std::string name, FunctionalityFactory f) {
    slots.emplace_back(std::move(name), std::move(f));
    return *this;
  }
};

class PartyContext {
 public:
  Role role() const { return role_; }

  void send(std::string_view channel, Bytes payload);
  void send(std::string_view channel, std::uint64_t v) { send(channel, pack(v)); }

  struct ReceiveAwaiter {
    PartyContext* ctx;
    std::string channel;
    bool await_ready() const { return ctx->has(channel); }
    void await_suspend(std::coroutine_handle<>) { ctx->waiting_ = channel; }
    Bytes await_resume() { return ctx->pop(channel); }
  };
  ReceiveAwaiter receive(std::string_view channel) { return {this, std::string(channel)}; }

  // Randomness drawn here is recorded in the party's view.
  std::uint64_t uniform(std::uint64_t n, std::string_view label = "r");
  bool bernoulli(double p, std::string_view label = "r");
  std::uint64_t bits(unsigned k, std::string_view label = "r");

  void input(std::string_view label, std::uint64_t value);
  void aux(std::string_view label, std::string value);
  void output(std::string_view label, std::uint64_t value);

 private:
  friend class Session;
  PartyContext(Session& s, Role r) : s_(s), role_(r) {}
  bool has(const std::string& channel) const;
  Bytes pop(const std::string& channel);
  View& view();

  Session& s_;
  Role role_;
  std::string waiting_;
  std::map<std::string, std::deque<Bytes>> inbox_;
};

// Single run of a session. All randomness comes from `parties`/`functionalities`
// sources; pass the same tape for both to enumerate.
class Session {
 public:
  Session(const SessionSpec& spec, RandomSource& party_a, RandomSource& party_b, RandomSource& functionalities);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  Transcript run();

 private:
  friend class PartyContext;
  friend class FunctionalityContext;
  void post(const std::string& from_tag, Role to, const std::string& channel, Bytes payload);
  void route(Role from, std::string_view channel, Bytes payload);

  const SessionSpec& spec_;
  RandomSource* rng_a_;
  RandomSource* rng_b_;
  RandomSource* rng_f_;
  PartyContext ctx_a_;
  PartyContext ctx_b_;
  std::map<std::string, std::unique_ptr<Functionality>> slots_;
  std::map<std::string, std::unique_ptr<FunctionalityContext>> fx_;
  Transcript t_;
  std::size_t step_ = 0;
  int depth_ = 0;
};

// Seeded run: each party and functionality gets its own derived stream.
Transcript run(const SessionSpec& spec, std::uint64_t seed);

inline constexpr unsigned kDefaultTapeCapBits = 24;

// Replayable random tape that walks every branch in depth-first order.
// uniform(n) has n equally weighted branches; bernoulli(p) has two, with
// weights 1-p and p, unless p is 0 or 1.
class TapeSource final : public RandomSource {
 public:
  explicit TapeSource(unsigned cap_bits = kDefaultTapeCapBits) : cap_bits_(cap_bits) {}

  std::uint64_t uniform(std::uint64_t n) override;
  bool bernoulli(double p) override;
  std::uint64_t bits(unsigned k) override;

  double weight() const { return weight_; }
  // Moves to the next unexplored tape; false when all are done.
  bool advance();

 private:
  struct Draw {
    std::uint64_t choice;
    std::uint64_t count;
    double p;  // < 0 for uniform
  };
  std::uint64_t draw(std::uint64_t count, double p);

  unsigned cap_bits_;
  std::vector<Draw> path_;
  std::size_t pos_ = 0;
  double weight_ = 1;
  double bits_used_ = 0;
};

// Calls f(transcript, weight) on every tape; weights sum to 1.
void for_each_run(const SessionSpec& spec, const std::function<void(const Transcript&, double)>& f,
                  unsigned cap_bits = kDefaultTapeCapBits);

template <class F>
auto enumerate_runs(const SessionSpec& spec, F project, unsigned cap_bits = kDefaultTapeCapBits) {
  using T = std::decay_t<decltype(project(std::declval<const Transcript&>()))>;
  std::vector<std::pair<T, double>> cells;
  for_each_run(spec, [&](const Transcript& t, double w) { cells.emplace_back(project(t), w); }, cap_bits);
  return prob::FiniteDist<T>(std::move(cells));
}

// Independent runs with seeds derive_seed(seed, i).
void monte_carlo_runs(const SessionSpec& spec, std::uint64_t trials, std::uint64_t seed,
                      const std::function<void(const Transcript&, std::uint64_t)>& f);

template <class F>
auto monte_carlo_sample(const SessionSpec& spec, std::uint64_t trials, std::uint64_t seed, F project) {
  using T = std::decay_t<decltype(project(std::declval<const Transcript&>()))>;
  std::vector<T> out;
  out.reserve(trials);
  monte_carlo_runs(spec, trials, seed, [&](const Transcript& t, std::uint64_t) { out.push_back(project(t)); });
  return out;
}

}  // namespace otamp::engine
