#pragma once

// Shared seeded field corpus for the oracle-equivalence and Besov-bound
// sweeps: zero, single-mode, two-band, and random multiband fields with
// amplitudes spread over several decades so every scan outcome (q = 0,
// midrange, saturated) occurs.

#include "tmhd/random_field.hpp"

namespace tmhd::testing {

inline Field lambda_corpus_field(const TorusGrid& g, int i, int count) {
  if (i == 0) return Field(g);
  const auto seed = static_cast<std::uint64_t>(1000 + i);
  const int q_excl = g.exclusive_block_q_max();
  const int q_max = g.block_q_max();
  // Amplitude ladder over six decades.
  const Real amp = std::pow(10.0, -5.0 + 6.0 * static_cast<Real>(i) / count);
  switch (i % 4) {
    case 1: {  // single mode in a rotating block
      const int q = i / 4 % (q_excl + 1);
      return random_divfree_field(g, seed, q, q, amp);
    }
    case 2: {  // two separated bands
      Field f = random_divfree_field(g, seed, 0, 0, amp);
      const int hi = std::max(2, q_excl - i / 8 % std::max(1, q_excl - 1));
      f += random_divfree_field(g, seed + 7, hi, hi, 0.5 * amp);
      return f;
    }
    case 3:  // low band
      return random_divfree_field(g, seed, 0, std::min(1, q_max), amp);
    default:  // full-band random
      return random_divfree_field(g, seed, 0, q_max, amp);
  }
}

}  // namespace tmhd::testing
