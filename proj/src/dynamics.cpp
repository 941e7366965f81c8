#include "tmhd/dynamics.hpp"

#include "tmhd/random_field.hpp"
#include "tmhd/transform.hpp"

namespace tmhd {
namespace {

GridSamples cross_product(const GridSamples& a, const GridSamples& b) {
  GridSamples out(a.grid);
  out.v[0] = a.v[1] * b.v[2] - a.v[2] * b.v[1];
  out.v[1] = a.v[2] * b.v[0] - a.v[0] * b.v[2];
  out.v[2] = a.v[0] * b.v[1] - a.v[1] * b.v[0];
  return out;
}

Real sup_magnitude(const GridSamples& s) {
  return std::sqrt((s.v[0].square() + s.v[1].square() + s.v[2].square()).maxCoeff());
}

Real enstrophy_weighted(const Field& f) {
  Real acc = 0.0;
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real k2 = static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                    static_cast<Real>(k[2]) * k[2];
    Real mag2 = 0.0;
    for (int c = 0; c < 3; ++c) mag2 += std::norm(f.c[c][idx]);
    acc += kTwoPi * kTwoPi * k2 * mag2;
  });
  return acc;
}

}  // namespace

Field emhd_nonlinear(const Field& b, Real d_i) {
  const GridSamples js = to_physical(curl(b));
  const GridSamples bs = to_physical(b);
  Field jxb = from_physical(cross_product(js, bs));
  dealias_inplace(jxb);
  Field out = curl(jxb);
  out *= -d_i;
  return out;
}

HallNonlinear hall_mhd_nonlinear(const Field& u, const Field& b, Real d_i) {
  if (!(u.grid == b.grid)) throw ParameterError("hall_mhd_nonlinear: grid mismatch");
  const GridSamples us = to_physical(u);
  const GridSamples ws = to_physical(curl(u));
  const GridSamples bs = to_physical(b);
  const GridSamples js = to_physical(curl(b));

  // Momentum: P[-(u.grad)u + (b.grad)b] = P[u x omega + j x b]; the gradient
  // parts of the rotational forms die under the projection.
  GridSamples mom(u.grid);
  {
    const GridSamples uxw = cross_product(us, ws);
    const GridSamples jxb = cross_product(js, bs);
    for (int m = 0; m < 3; ++m) mom.v[m] = uxw.v[m] + jxb.v[m];
  }
  Field du = from_physical(mom);
  dealias_inplace(du);
  du = leray_project(du);

  // Induction: -(u.grad)b + (b.grad)u - d_i curl(j x b) = curl((u - d_i j) x b)
  // for solenoidal u, b; a curl is solenoidal bin by bin.
  GridSamples adv(u.grid);
  for (int m = 0; m < 3; ++m) adv.v[m] = us.v[m] - d_i * js.v[m];
  Field cross = from_physical(cross_product(adv, bs));
  dealias_inplace(cross);
  Field db = curl(cross);

  return {std::move(du), std::move(db)};
}

Real cfl_dt(const SimState& state, const PhysicsParams& p, Real dt_max, Real c_cfl) {
  const TorusGrid& g = state.b.grid;
  const Real kmax = kTwoPi * g.kmax_retained();
  const Real linf_u = state.u ? lp_norm(*state.u, std::numeric_limits<Real>::infinity()) : 0.0;
  const Real linf_b = lp_norm(state.b, std::numeric_limits<Real>::infinity());
  const Real rate = kmax * linf_u + p.d_i * kmax * kmax * linf_b;
  if (rate <= 0.0) return dt_max;
  return std::min(dt_max, c_cfl / rate);
}

Stepper::Stepper(const TorusGrid& grid, System system, const PhysicsParams& physics)
    : grid_(grid), system_(system), physics_(physics) {
  grid_.validate();
  physics_.validate();
  if (physics_.forcing && physics_.forcing->amplitude != 0.0) {
    const ForcingSpec& fs = *physics_.forcing;
    Field f = random_divfree_field(grid_, fs.seed, fs.q_lo, fs.q_hi, fs.amplitude);
    if (fs.field == "b")
      forcing_b_ = std::move(f);
    else if (fs.field == "u")
      forcing_u_ = std::move(f);
    else
      throw ParameterError("ForcingSpec: field must be 'u' or 'b'");
  }
}

void Stepper::apply_integrating_factor(Field& f, Real diffusivity, Real dt) const {
  for_each_mode(grid_, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real k2 = static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                    static_cast<Real>(k[2]) * k[2];
    const Real e = std::exp(-kTwoPi * kTwoPi * diffusivity * k2 * dt);
    for (int m = 0; m < 3; ++m) f.c[m][idx] *= e;
  });
}

void Stepper::refresh_linf(const SimState& state) {
  // NaN must be caught explicitly: coefficientwise max() skips NaN entries.
  for (int m = 0; m < 3; ++m) {
    if (!state.b.c[m].allFinite() || (state.u && !state.u->c[m].allFinite()))
      throw BlowupError(state.t);
  }
  linf_b_ = sup_magnitude(to_physical(state.b));
  linf_u_ = state.u ? sup_magnitude(to_physical(*state.u)) : 0.0;
  const Real scale = std::max(linf_u_, linf_b_);
  if (blowup_scale_ == 0.0) blowup_scale_ = scale;
  if (!std::isfinite(scale) || (blowup_scale_ > 0.0 && scale > 1e6 * blowup_scale_))
    throw BlowupError(state.t);
}

void Stepper::advance(SimState& state, Real dt) {
  refresh_linf(state);
  if (system_ == System::EMHD) {
    // Integrating-factor RK4 on b_t = N(b) + mu Lap b; E = exp(L dt) applied
    // via the half/full-step factors so only decaying exponentials appear:
    //   k1 = N(a)
    //   k2 = N(E_h (a + dt/2 k1))
    //   k3 = N(E_h a + dt/2 k2)
    //   k4 = N(E (a) + dt E_h k3)   [E a computed as E_h(E_h a)]
    //   a' = E a + dt/6 (E k1 + 2 E_h (k2 + k3) + k4)
    auto nonlinear = [&](const Field& b) {
      Field n = emhd_nonlinear(b, physics_.d_i);
      if (forcing_b_) n += *forcing_b_;
      return n;
    };
    const Field& a = state.b;
    Field k1 = nonlinear(a);

    Field stage = a + (dt / 2.0) * k1;
    apply_integrating_factor(stage, physics_.mu, dt / 2.0);
    Field k2 = nonlinear(stage);

    Field eh_a = a;
    apply_integrating_factor(eh_a, physics_.mu, dt / 2.0);
    stage = eh_a + (dt / 2.0) * k2;
    Field k3 = nonlinear(stage);

    Field e_a = eh_a;
    apply_integrating_factor(e_a, physics_.mu, dt / 2.0);
    Field eh_k3 = k3;
    apply_integrating_factor(eh_k3, physics_.mu, dt / 2.0);
    stage = e_a + dt * eh_k3;
    Field k4 = nonlinear(stage);

    apply_integrating_factor(k1, physics_.mu, dt);        // E k1
    Field k23 = k2 + k3;
    apply_integrating_factor(k23, physics_.mu, dt / 2.0); // E_h (k2 + k3)
    Field next = e_a + (dt / 6.0) * (k1 + 2.0 * k23 + k4);
    for (int m = 0; m < 3; ++m)
      if (!next.c[m].allFinite()) throw BlowupError(state.t);  // keep last valid state
    state.b = std::move(next);
    state.t += dt;
    return;
  }

  // Hall-MHD: same scheme on the pair (u, b) with diffusivities (nu, mu).
  if (!state.u) throw ParameterError("Stepper: Hall-MHD state requires u");
  auto nonlinear = [&](const Field& u, const Field& b) {
    HallNonlinear n = hall_mhd_nonlinear(u, b, physics_.d_i);
    if (forcing_u_) n.du += *forcing_u_;
    if (forcing_b_) n.db += *forcing_b_;
    return n;
  };
  auto ifac = [&](Field& fu, Field& fb, Real tau) {
    apply_integrating_factor(fu, physics_.nu, tau);
    apply_integrating_factor(fb, physics_.mu, tau);
  };

  const Field& au = *state.u;
  const Field& ab = state.b;
  HallNonlinear K1 = nonlinear(au, ab);

  Field su = au + (dt / 2.0) * K1.du;
  Field sb = ab + (dt / 2.0) * K1.db;
  ifac(su, sb, dt / 2.0);
  HallNonlinear K2 = nonlinear(su, sb);

  Field eh_u = au, eh_b = ab;
  ifac(eh_u, eh_b, dt / 2.0);
  su = eh_u + (dt / 2.0) * K2.du;
  sb = eh_b + (dt / 2.0) * K2.db;
  HallNonlinear K3 = nonlinear(su, sb);

  Field e_u = eh_u, e_b = eh_b;
  ifac(e_u, e_b, dt / 2.0);
  Field ehk3u = K3.du, ehk3b = K3.db;
  ifac(ehk3u, ehk3b, dt / 2.0);
  su = e_u + dt * ehk3u;
  sb = e_b + dt * ehk3b;
  HallNonlinear K4 = nonlinear(su, sb);

  ifac(K1.du, K1.db, dt);
  Field k23u = K2.du + K3.du;
  Field k23b = K2.db + K3.db;
  ifac(k23u, k23b, dt / 2.0);
  Field next_u = e_u + (dt / 6.0) * (K1.du + 2.0 * k23u + K4.du);
  Field next_b = e_b + (dt / 6.0) * (K1.db + 2.0 * k23b + K4.db);
  for (int m = 0; m < 3; ++m)
    if (!next_u.c[m].allFinite() || !next_b.c[m].allFinite())
      throw BlowupError(state.t);
  *state.u = std::move(next_u);
  state.b = std::move(next_b);
  state.t += dt;
}

std::vector<Real> block_l2sq_spectrum(const Field& f) {
  // phi-weighted block energies (same convention as hs_norm): they partition
  // the total energy exactly across blocks.
  const CutoffProfile cp;
  const int q_max = f.grid.block_q_max();
  std::vector<Real> spec(static_cast<std::size_t>(q_max) + 2, 0.0);
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    Real mag2 = 0.0;
    for (int c = 0; c < 3; ++c) mag2 += std::norm(f.c[c][idx]);
    if (mag2 == 0.0) return;
    const Real km = std::sqrt(static_cast<Real>(k[0]) * k[0] +
                              static_cast<Real>(k[1]) * k[1] +
                              static_cast<Real>(k[2]) * k[2]);
    for (int q = -1; q <= q_max; ++q) {
      const Real w = cp.phi_q(q, km);
      if (w != 0.0) spec[static_cast<std::size_t>(q) + 1] += w * mag2;
    }
  });
  return spec;
}

RunResult simulate_run(Stepper& stepper, SimState& state, const RunParams& rp,
                       const std::function<void(const SimState&)>& on_snapshot) {
  RunResult result;
  auto record = [&](Real dt_used) {
    SeriesRow row;
    row.t = state.t;
    row.dt = dt_used;
    row.energy_b = 0.5 * l2_norm(state.b) * l2_norm(state.b);
    row.dissipation_b = stepper.physics().mu * enstrophy_weighted(state.b);
    row.spec_b = block_l2sq_spectrum(state.b);
    if (state.u) {
      row.energy_u = 0.5 * l2_norm(*state.u) * l2_norm(*state.u);
      row.dissipation_u = stepper.physics().nu * enstrophy_weighted(*state.u);
      row.spec_u = block_l2sq_spectrum(*state.u);
    }
    result.series.push_back(std::move(row));
  };

  Real last_snap_t = -1.0;
  auto snapshot = [&] {
    if (on_snapshot && state.t != last_snap_t) {
      on_snapshot(state);
      last_snap_t = state.t;
    }
  };

  record(0.0);
  snapshot();
  Real next_snapshot = rp.snapshot_cadence > 0.0 ? rp.snapshot_cadence
                                                 : std::numeric_limits<Real>::infinity();
  const Real t_eps = 1e-12 * std::max(rp.t_end, 1.0);
  try {
    while (state.t < rp.t_end - t_eps) {
      Real dt = cfl_dt(state, stepper.physics(), rp.dt_max, rp.c_cfl);
      if (state.t + dt > rp.t_end) dt = rp.t_end - state.t;
      stepper.advance(state, dt);
      record(dt);
      if (state.t + t_eps >= next_snapshot) {
        snapshot();
        while (next_snapshot <= state.t + t_eps) next_snapshot += rp.snapshot_cadence;
      }
    }
  } catch (const BlowupError&) {
    result.blew_up = true;
  }
  if (!result.blew_up) snapshot();
  result.t_final = state.t;
  return result;
}

}  // namespace tmhd
