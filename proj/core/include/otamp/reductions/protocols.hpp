// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "otamp/engine/session.hpp"
#include "otamp/hashing/toeplitz.hpp"
#include "otamp/primitives/ot.hpp"
#include "otamp/primitives/uot.hpp"
#include "otamp/primitives/wot.hpp"

namespace otamp::reductions {

using engine::CorruptionMode;
using engine::SessionSpec;

// Outputs follow one naming scheme: the sending side outputs x0..x{n-1}
// (or u0, u1), the receiving side outputs c and y.

// Slot "ot0". A draws x^n, B draws c.
SessionSpec rot_from_ot_session(primitives::OtSpec spec, CorruptionMode mode = CorruptionMode::semi_honest_both());

// Slot "rot0". A inputs x^n, B inputs c; B outputs y = x_c and A outputs nothing.
SessionSpec ot_from_rot_session(primitives::OtSpec spec, std::vector<std::uint64_t> x, std::uint64_t c,
                                CorruptionMode mode = CorruptionMode::semi_honest_both());

// Slot "rot0" with 1-out-of-2 bits. Zero messages; A ends as the receiver
// (outputs c, y) and B as the sender (outputs x0, x1).
SessionSpec rotor_session(CorruptionMode mode = CorruptionMode::semi_honest_both());

// One OT from A to B turned into an OT from B to A by ROTfromOT, ROTOR and
// OTfromROT. B inputs (x0, x1), A inputs c and outputs y.
SessionSpec reversed_ot_session(std::uint8_t x0, std::uint8_t x1, std::uint8_t c);

// Largest admissible output length for the hashing construction.
double rot_from_uot_bound(double alpha, double eps);

// Slot "uot0". A sends Toeplitz seeds (r0, r1) and outputs u_i = h(x_i, r_i);
// B outputs c and y = h(x_c, r_c). Throws PremiseViolation unless
// ell <= alpha/2 - 3 log2(1/eps).
SessionSpec rot_from_uot_session(primitives::UotSpec spec, unsigned ell, double eps,
                                 std::optional<primitives::UotAdversary> adversary = std::nullopt,
                                 CorruptionMode mode = CorruptionMode::semi_honest_both());

// Slots "wot0".."wot{n-1}" each backed by `leaf`. Outputs x0, x1 (A) and c, y (B).
SessionSpec r_reduce_session(unsigned n, primitives::WotSampler leaf);
SessionSpec s_reduce_session(unsigned n, primitives::WotSampler leaf);
SessionSpec e_reduce_session(unsigned n, primitives::WotSampler leaf);

// Sample in the batch layout rebuilt from a reduce-session transcript, with
// the full auxiliary views as u and v.
primitives::WotSample wot_from_transcript(const engine::Transcript& t);

}  // namespace otamp::reductions
