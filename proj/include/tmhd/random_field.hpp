#pragma once

#include "tmhd/field.hpp"

namespace tmhd {

/// Deterministic band-limited divergence-free random field.
///
/// Fourier support lies inside dyadic blocks q in [q_lo, q_hi]: modes with
/// lambda_{q_lo} <= |k| <= (3/4) lambda_{q_hi+1} (|k| <= (3/4) lambda_{q_hi+1}
/// when q_lo = -1), which keeps every block outside the band identically
/// zero.  The L^2 norm equals `amplitude` exactly after rescaling.
///
/// Coefficients are drawn per wavevector from a counter-based hash of
/// (seed, k), so the same (seed, band) produces the same field content on
/// any grid that resolves the band; runs at different N see identical data.
Field random_divfree_field(const TorusGrid& g, std::uint64_t seed, int q_lo, int q_hi,
                           Real amplitude);

}  // namespace tmhd
