#pragma once

#include <array>
#include <cstdint>

#include "tmhd/common.hpp"

namespace tmhd {

/// Uniform discretization of the periodic torus in n = 2 or 3 dimensions.
///
/// Fields live on N^n points; spectral coefficients are indexed by integer
/// wavevectors k with -N/2 <= k_i <= N/2-1 in each dimension (standard DFT
/// bin order: 0..N/2-1, -N/2..-1).  n = 2 means 2.5-D: fields keep three
/// components but depend on (x, y) only.
struct TorusGrid {
  int n = 2;                       ///< spatial dimension (2 or 3)
  int N = 64;                      ///< points per dimension (even, >= 8)
  Real period = 1.0;               ///< torus side length
  Real dealias_fraction = 2.0 / 3.0;

  void validate() const {
    if (n != 2 && n != 3) throw ParameterError("TorusGrid: n must be 2 or 3");
    if (N < 8 || N % 2 != 0) throw ParameterError("TorusGrid: N must be even and >= 8");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
      throw ParameterError("TorusGrid: dealias_fraction must lie in (0, 1]");
    if (!(period > 0.0)) throw ParameterError("TorusGrid: period must be positive");
  }

  /// Total number of grid points / spectral bins.
  std::int64_t size() const {
    std::int64_t s = 1;
    for (int d = 0; d < n; ++d) s *= N;
    return s;
  }

  /// Integer wavevector component for DFT bin index i in [0, N).
  int wavenumber_of_bin(int i) const { return i < N / 2 ? i : i - N; }

  /// Per-dimension dealias cutoff: modes with |k_i| > cutoff are zeroed.
  Real dealias_cutoff() const { return dealias_fraction * N / 2.0; }

  bool mode_is_dealiased(const std::array<int, 3>& k) const {
    const Real cut = dealias_cutoff();
    for (int d = 0; d < n; ++d)
      if (std::abs(static_cast<Real>(k[d])) > cut) return true;
    return false;
  }

  /// Largest |k| over the retained (dealiased) band: the corner mode.
  Real kmax_retained() const {
    const Real per_dim = std::floor(dealias_cutoff());
    return per_dim * std::sqrt(static_cast<Real>(n));
  }

  /// Largest dyadic index with nonzero content: smallest q such that every
  /// retained |k| <= (3/4) * 2^(q+1).  Blocks above are identically zero.
  int block_q_max() const {
    const Real kmax = kmax_retained();
    int q = 0;
    while (0.75 * lambda_q(q + 1) < kmax) ++q;
    return q;
  }

  /// Largest q whose exclusive-support window [lambda_q, (3/4) lambda_{q+1}]
  /// still contains retained lattice modes; bands above it cannot host a
  /// field supported in a single block.
  int exclusive_block_q_max() const {
    const Real axis_max = std::floor(dealias_cutoff());
    int q = 0;
    while (lambda_q(q + 1) <= axis_max) ++q;
    return q;
  }

  bool operator==(const TorusGrid& o) const {
    return n == o.n && N == o.N && period == o.period &&
           dealias_fraction == o.dealias_fraction;
  }
};

/// Visit every spectral bin of a grid.  fn(flat_index, k) receives the
/// integer wavevector with k[2] = 0 when n = 2.  Iteration order is fixed
/// (row-major, last axis fastest) so reductions are deterministic.
template <typename Fn>
void for_each_mode(const TorusGrid& g, Fn&& fn) {
  std::array<int, 3> k{0, 0, 0};
  if (g.n == 2) {
    std::int64_t idx = 0;
    for (int i0 = 0; i0 < g.N; ++i0) {
      k[0] = g.wavenumber_of_bin(i0);
      for (int i1 = 0; i1 < g.N; ++i1, ++idx) {
        k[1] = g.wavenumber_of_bin(i1);
        fn(idx, k);
      }
    }
  } else {
    std::int64_t idx = 0;
    for (int i0 = 0; i0 < g.N; ++i0) {
      k[0] = g.wavenumber_of_bin(i0);
      for (int i1 = 0; i1 < g.N; ++i1) {
        k[1] = g.wavenumber_of_bin(i1);
        for (int i2 = 0; i2 < g.N; ++i2, ++idx) {
          k[2] = g.wavenumber_of_bin(i2);
          fn(idx, k);
        }
      }
    }
  }
}

}  // namespace tmhd
