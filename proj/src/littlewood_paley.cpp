#include "tmhd/littlewood_paley.hpp"

#include "tmhd/transform.hpp"

namespace tmhd {
namespace {

Real kmag_of(const std::array<int, 3>& k) {
  return std::sqrt(static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                   static_cast<Real>(k[2]) * k[2]);
}

template <typename Multiplier>
Field apply_radial_multiplier(const Field& f, Multiplier&& m) {
  Field out(f.grid);
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real w = m(kmag_of(k));
    if (w == 0.0) return;
    for (int c = 0; c < 3; ++c) out.c[c][idx] = w * f.c[c][idx];
  });
  return out;
}

/// (u . grad) v, products dealiased; grad carries 2pi factors.
Field advect(const Field& u, const Field& v) {
  const TorusGrid& g = u.grid;
  const GridSamples us = to_physical(u);
  GridSamples out(g);
  ArrayXc work(g.size());
  for (int m = 0; m < 3; ++m) {
    for (int d = 0; d < g.n; ++d) {
      for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        work[idx] = Complex(0.0, kTwoPi * k[d]) * v.c[m][idx];
      });
      dft_inverse_inplace(g, work);
      out.v[m] += us.v[d] * work.real();
    }
  }
  Field r = from_physical(out);
  dealias_inplace(r);
  return r;
}

/// b x (curl h), product in physical space, dealiased.
Field cross_with_curl(const Field& b, const Field& h) {
  const GridSamples bs = to_physical(b);
  const GridSamples js = to_physical(curl(h));
  GridSamples out(b.grid);
  out.v[0] = bs.v[1] * js.v[2] - bs.v[2] * js.v[1];
  out.v[1] = bs.v[2] * js.v[0] - bs.v[0] * js.v[2];
  out.v[2] = bs.v[0] * js.v[1] - bs.v[1] * js.v[0];
  Field r = from_physical(out);
  dealias_inplace(r);
  return r;
}

}  // namespace

Real CutoffProfile::chi(Real t) const {
  if (t <= bridge_lo) return 1.0;
  if (t >= bridge_hi) return 0.0;
  const Real x = (t - bridge_lo) / (bridge_hi - bridge_lo);
  const Real gx = std::exp(-1.0 / x);
  const Real g1mx = std::exp(-1.0 / (1.0 - x));
  return 1.0 - gx / (gx + g1mx);
}

Real CutoffProfile::phi_q(int q, Real kmag) const {
  if (q < -1) throw ParameterError("phi_q: q must be >= -1");
  if (q == -1) return chi(kmag);
  const Real lq = lambda_q(q);
  return chi(kmag / (2.0 * lq)) - chi(kmag / lq);
}

Field dyadic_block(const Field& f, int q) {
  if (q < -1 || q > f.grid.block_q_max())
    throw ParameterError("dyadic_block: q out of range");
  const CutoffProfile cp;
  return apply_radial_multiplier(f, [&](Real km) { return cp.phi_q(q, km); });
}

DyadicBlocks decompose(const Field& f) {
  DyadicBlocks d;
  d.grid = f.grid;
  d.q_max = f.grid.block_q_max();
  d.blocks.reserve(static_cast<std::size_t>(d.q_max) + 2);
  for (int q = -1; q <= d.q_max; ++q) d.blocks.push_back(dyadic_block(f, q));
  return d;
}

Field partial_sum(const Field& f, int Q) {
  if (Q < -1) throw ParameterError("partial_sum: Q must be >= -1");
  const CutoffProfile cp;
  const Real lQ1 = lambda_q(Q + 1);
  return apply_radial_multiplier(f, [&](Real km) { return cp.chi(km / lQ1); });
}

Field band_sum(const Field& f, int P, int Q) {
  if (!(-1 <= P && P <= Q)) throw ParameterError("band_sum: require -1 <= P <= Q");
  return partial_sum(f, Q) - partial_sum(f, P);
}

Field tilde_block(const Field& f, int q) {
  const int q_max = f.grid.block_q_max();
  Field out(f.grid);
  for (int p = std::max(-1, q - 1); p <= std::min(q_max, q + 1); ++p)
    out += dyadic_block(f, p);
  return out;
}

Real hs_norm(const Field& f, Real s) {
  // Dyadic sum with phi-weighted block energies: the weights partition each
  // |k| exactly, so the s = 0 case telescopes to Parseval (smooth blocks are
  // not mutually orthogonal, squared weights would not).
  const CutoffProfile cp;
  const int q_max = f.grid.block_q_max();
  std::vector<Real> block_l2sq(static_cast<std::size_t>(q_max) + 2, 0.0);
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real km = kmag_of(k);
    Real mag2 = 0.0;
    for (int c = 0; c < 3; ++c) mag2 += std::norm(f.c[c][idx]);
    if (mag2 == 0.0) return;
    for (int q = -1; q <= q_max; ++q) {
      const Real w = cp.phi_q(q, km);
      if (w != 0.0) block_l2sq[static_cast<std::size_t>(q) + 1] += w * mag2;
    }
  });
  Real acc = 0.0;
  for (int q = -1; q <= q_max; ++q)
    acc += std::pow(lambda_q(q), 2.0 * s) * block_l2sq[static_cast<std::size_t>(q) + 1];
  return std::sqrt(acc);
}

Real besov_sup_norm(const Field& f, Real s, Real r) {
  if (!(r >= 1.0)) throw ParameterError("besov_sup_norm: r must lie in [1, inf]");
  const int q_max = f.grid.block_q_max();
  Real sup = 0.0;
  for (int q = -1; q <= q_max; ++q) {
    const Real v = std::pow(lambda_q(q), s) * lp_norm(dyadic_block(f, q), r);
    sup = std::max(sup, v);
  }
  return sup;
}

Field dealiased_product(const Field& u, const Field& v) {
  if (!(u.grid == v.grid)) throw ParameterError("dealiased_product: grid mismatch");
  const GridSamples us = to_physical(u);
  const GridSamples vs = to_physical(v);
  GridSamples out(u.grid);
  for (int m = 0; m < 3; ++m) out.v[m] = us.v[m] * vs.v[m];
  Field r = from_physical(out);
  dealias_inplace(r);
  return r;
}

BonySplit bony_split(const Field& u, const Field& v) {
  if (!(u.grid == v.grid)) throw ParameterError("bony_split: grid mismatch");
  const int q_max = u.grid.block_q_max();
  BonySplit out{Field(u.grid), Field(u.grid), Field(u.grid)};
  for (int q = -1; q <= q_max; ++q) {
    const Field uq = dyadic_block(u, q);
    const Field vq = dyadic_block(v, q);
    if (q - 2 >= -1) {
      out.low_high += dealiased_product(partial_sum(u, q - 2), vq);
      out.high_low += dealiased_product(uq, partial_sum(v, q - 2));
    }
    out.resonant += dealiased_product(tilde_block(u, q), vq);
  }
  return out;
}

Field transport_commutator(const Field& u, const Field& v, int q, int p) {
  if (std::abs(p - q) > 2)
    throw ParameterError("transport_commutator: require |p - q| <= 2");
  const Field u_low = partial_sum(u, p - 2);
  const Field v_p = dyadic_block(v, p);
  const Field first = dyadic_block(advect(u_low, v_p), q);
  const Field second = advect(u_low, dyadic_block(v_p, q));
  return first - second;
}

Field hall_commutator(const Field& b, const Field& h, int q, int p) {
  if (std::abs(p - q) > 2) throw ParameterError("hall_commutator: require |p - q| <= 2");
  if (!is_divergence_free(b, 1e-10))
    throw ParameterError("hall_commutator: b must be divergence-free");
  const Field b_low = partial_sum(b, p - 2);
  const Field h_p = dyadic_block(h, p);
  const Field first = dyadic_block(cross_with_curl(b_low, h_p), q);
  const Field second = cross_with_curl(b_low, dyadic_block(h_p, q));
  return first - second;
}

std::optional<Real> bernstein_check(const Field& f_block, int q, Real r, Real s) {
  if (!(s >= r && r >= 1.0)) throw ParameterError("bernstein_check: require s >= r >= 1");
  const Real denom_norm = lp_norm(f_block, s);
  if (denom_norm == 0.0) return std::nullopt;
  const Real srecip = std::isinf(s) ? 0.0 : 1.0 / s;
  const Real expo = f_block.grid.n * (1.0 / r - srecip);
  return lp_norm(f_block, r) / (std::pow(lambda_q(q), expo) * denom_norm);
}

}  // namespace tmhd
