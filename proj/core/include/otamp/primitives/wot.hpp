// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "otamp/engine/session.hpp"

namespace otamp::primitives {

enum class Provenance { Exact, UpperBound, Estimated };
const char* provenance_name(Provenance p);

struct WotParams {
  double p = 0;
  double q = 0;
  double eps = 0;
  Provenance provenance = Provenance::Exact;
  double confidence = 0;  // failure probability for Estimated

  void validate() const;
  bool impossible() const { return p + q + 2 * eps >= 1; }
};

// One weak-OT outcome. u and v are the parties' auxiliary views as
// whitespace-free strings; e is recomputed from the bits.
struct WotSample {
  std::uint8_t x0 = 0, x1 = 0, c = 0, y = 0;
  std::string u, v;

  std::uint8_t xc() const { return c ? x1 : x0; }
  std::uint8_t x_other() const { return c ? x0 : x1; }
  std::uint8_t e() const { return y ^ xc(); }
  friend bool operator==(const WotSample&, const WotSample&) = default;
  friend auto operator<=>(const WotSample&, const WotSample&) = default;
};

using WotSampler = std::function<WotSample(engine::RandomSource&)>;

// The communication-only construction with error (1 - p - q) / 2.
WotSample simwot_sample(double p, double q, engine::RandomSource& rng);
// Independent leak-C (prob p), leak-X_{1-C} (prob q) and flip-Y (prob eps) events.
WotSample event_model_wot(double p, double q, double eps, engine::RandomSource& rng);
WotSampler simwot_sampler(double p, double q);
WotSampler event_model_sampler(double p, double q, double eps);

// Batch text format: one sample per line, "x0 x1 c y e u v".
std::string format_batch(const std::vector<WotSample>& batch);
std::vector<WotSample> parse_batch(std::string_view text);
std::vector<WotSample> sample_batch(const WotSampler& s, std::uint64_t count, std::uint64_t seed);

// Slot functionality backed by a sampler. Each party sends an empty request;
// A then receives (x0, x1, u) and B receives (c, y, v).
class WotFunctionality final : public engine::Functionality {
 public:
  explicit WotFunctionality(WotSampler s) : sampler_(std::move(s)) {}
  std::string kind() const override { return "WOT"; }
  void on_input(engine::Role from, const engine::Bytes& payload, engine::FunctionalityContext& fx) override;

 private:
  WotSampler sampler_;
  bool got_a_ = false, got_b_ = false;
};

engine::FunctionalityFactory wot_factory(WotSampler s);

struct WotDelivery {
  std::uint8_t a, b;  // (x0, x1) for A, (c, y) for B
  std::string leak;
};
WotDelivery decode_wot_delivery(const engine::Bytes& b);

// SimWOT as a Comm-only protocol. Outputs x0, x1 for A and c, y for B.
engine::PartyTask simwot_party_a(engine::PartyContext& ctx, double q);
engine::PartyTask simwot_party_b(engine::PartyContext& ctx, double p, double q);
engine::SessionSpec simwot_session(double p, double q);

}  // namespace otamp::primitives
