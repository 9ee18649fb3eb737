// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "otamp/primitives/wot.hpp"

namespace otamp::cli {

// Decimal ("0.25") or dyadic ("1/2^2", "3/8") probability in [0, 1].
double parse_probability(const std::string& s);

struct SourceSpec {
  enum class Kind { Event, SimWot, Batch } kind;
  primitives::WotParams params;  // nominal parameters of the generator
  std::string path;              // Batch only

  primitives::WotSampler sampler() const;
  std::string describe() const;
};

// "event:p,q,eps", "simwot:p,q" or "batch:<path>".
SourceSpec parse_source(const std::string& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace otamp::cli
