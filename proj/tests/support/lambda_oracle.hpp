#pragma once

// Brute-force re-implementation of the determining-wavenumber definitions,
// used as the oracle for the production scan.  Shares only the raw DFT and
// the cutoff profile definition with the library: blocks, truncations, norms
// and the q/p scan are all rebuilt here from the displayed formulas with
// plain loops.

#include <vector>

#include "tmhd/field.hpp"
#include "tmhd/littlewood_paley.hpp"
#include "tmhd/transform.hpp"
#include "tmhd/wavenumbers.hpp"

namespace tmhd::oracle {

struct OracleLambda {
  int q = 0;
  bool finite = true;
};

inline Real mode_magnitude(const std::array<int, 3>& k) {
  return std::sqrt(static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                   static_cast<Real>(k[2]) * k[2]);
}

inline Field multiplier_field(const Field& f, int q, bool partial) {
  const CutoffProfile cp;
  Field out(f.grid);
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real km = mode_magnitude(k);
    const Real w = partial ? cp.chi(km / lambda_q(q + 1)) : cp.phi_q(q, km);
    for (int m = 0; m < 3; ++m) out.c[m][idx] = w * f.c[m][idx];
  });
  return out;
}

inline Real norm_r(const Field& f, Real r) {
  GridSamples s = to_physical(f);
  const std::int64_t n = f.grid.size();
  if (std::isinf(r)) {
    Real worst = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const Real mag = std::sqrt(s.v[0][i] * s.v[0][i] + s.v[1][i] * s.v[1][i] +
                                 s.v[2][i] * s.v[2][i]);
      if (mag > worst) worst = mag;
    }
    return worst;
  }
  Real acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const Real mag = std::sqrt(s.v[0][i] * s.v[0][i] + s.v[1][i] * s.v[1][i] +
                               s.v[2][i] * s.v[2][i]);
    acc += std::pow(mag, r);
  }
  return std::pow(acc / static_cast<Real>(n), 1.0 / r);
}

inline Real grad_sup(const Field& f) {
  const TorusGrid& g = f.grid;
  std::vector<ArrayXr> parts;
  for (int m = 0; m < 3; ++m) {
    for (int d = 0; d < g.n; ++d) {
      ArrayXc w(g.size());
      for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        w[idx] = Complex(0.0, kTwoPi * k[d]) * f.c[m][idx];
      });
      dft_inverse_inplace(g, w);
      parts.push_back(w.real());
    }
  }
  Real worst = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    Real acc = 0.0;
    for (const auto& p : parts) acc += p[i] * p[i];
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

/// Literal scan of the magnetic definition: the first q (in 0..q_scan_max)
/// with (L 2^{p-q})^delta (2^p)^{n/r} ||b_p||_r < c_r mu for every p > q and
/// 2^{-q} ||grad b_{<=q}||_inf < c_r mu.
inline OracleLambda lambda_b_bruteforce(const Field& b, const WavenumberParams& wp) {
  const int n = b.grid.n;
  const int q_blocks = b.grid.block_q_max();
  const int q_scan = wp.q_max >= 0 ? std::min(wp.q_max, q_blocks) : q_blocks;
  for (int q = 0; q <= q_scan; ++q) {
    bool ok = true;
    for (int p = q + 1; p <= q_blocks && ok; ++p) {
      const Real quantity = std::pow(wp.L * std::ldexp(1.0, p - q), wp.delta) *
                            std::pow(std::ldexp(1.0, p), static_cast<Real>(n) / wp.r) *
                            norm_r(multiplier_field(b, p, false), wp.r);
      if (!(quantity < wp.c_r * wp.mu)) ok = false;
    }
    if (ok) {
      const Real low = grad_sup(multiplier_field(b, q, true)) / std::ldexp(1.0, q);
      if (!(low < wp.c_r * wp.mu)) ok = false;
    }
    if (ok) return {q, true};
  }
  return {q_scan + 1, false};
}

/// Literal scan of the velocity definition (note the 2^{-q} prefactor on the
/// high-frequency quantity and 2^{-2q} on the gradient).
inline OracleLambda lambda_u_bruteforce(const Field& u, const WavenumberParams& wp) {
  const int q_blocks = u.grid.block_q_max();
  const int q_scan = wp.q_max >= 0 ? std::min(wp.q_max, q_blocks) : q_blocks;
  const Real inf = std::numeric_limits<Real>::infinity();
  for (int q = 0; q <= q_scan; ++q) {
    bool ok = true;
    for (int p = q + 1; p <= q_blocks && ok; ++p) {
      const Real quantity = std::pow(wp.L * std::ldexp(1.0, p - q), wp.sigma) *
                            norm_r(multiplier_field(u, p, false), inf) /
                            std::ldexp(1.0, q);
      if (!(quantity < wp.c_r * wp.nu)) ok = false;
    }
    if (ok) {
      const Real low = grad_sup(multiplier_field(u, q, true)) /
                       (std::ldexp(1.0, q) * std::ldexp(1.0, q));
      if (!(low < wp.c_r * wp.nu)) ok = false;
    }
    if (ok) return {q, true};
  }
  return {q_scan + 1, false};
}

}  // namespace tmhd::oracle
