#include "tmhd/sync_lab.hpp"

#include <sstream>

#include "tmhd/random_field.hpp"

namespace tmhd {

std::pair<Real, Real> SyncConfig::admissible_s_interval(const WavenumberParams& wp,
                                                        int n) const {
  const Real nr = static_cast<Real>(n) / wp.r;
  if (system == System::EMHD) return {-nr, nr - 1.0};
  return {-std::min({nr, wp.delta, wp.sigma}), nr - 1.0};
}

void SyncConfig::validate(const WavenumberParams& wp, int n) const {
  wp.validate_core(n);
  const auto [lo, hi] = admissible_s_interval(wp, n);
  if (system == System::HallMHD) {
    const Real nr = static_cast<Real>(n) / wp.r;
    if (!(wp.delta > 1.0 - nr) || !(wp.sigma > 1.0 - nr))
      throw ParameterError(
          "SyncConfig: Hall synchronization requires delta > 1 - n/r and sigma > 1 - n/r");
  }
  if (!(s > lo && s < hi)) {
    std::ostringstream msg;
    msg << "SyncConfig: s = " << s << " outside the admissible interval (" << lo << ", "
        << hi << ")";
    throw ParameterError(msg.str());
  }
  if (!(perturbation.relative_amplitude >= 0.0))
    throw ParameterError("SyncConfig: perturbation amplitude must be >= 0");
}

Field assimilate_low_modes(const Field& reference, const Field& follower, int Q) {
  if (!(reference.grid == follower.grid))
    throw ParameterError("assimilate_low_modes: grid mismatch");
  Field out = follower;
  const Real cut = lambda_q(Q + 1);
  for_each_mode(reference.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real km2 = static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                     static_cast<Real>(k[2]) * k[2];
    if (km2 < cut * cut)
      for (int m = 0; m < 3; ++m) out.c[m][idx] = reference.c[m][idx];
  });
  return out;
}

namespace {

Real energy_of(const SimState& st) {
  Real e = 0.5 * l2_norm(st.b) * l2_norm(st.b);
  if (st.u) e += 0.5 * l2_norm(*st.u) * l2_norm(*st.u);
  return e;
}

struct StepDiagnostics {
  DeterminingWavenumber lB, lU;
  SyncRow row;
};

/// Wavenumbers of both solutions, pairwise maxima, and a record row for the
/// current states (before any assimilation flags are set).
StepDiagnostics diagnose(const SimState& ref, const SimState& fol,
                         const WavenumberParams& wp, const SyncConfig& sync) {
  const bool hall = sync.system == System::HallMHD;
  const int q_top = ref.b.grid.block_q_max();
  StepDiagnostics d;
  SyncRow& row = d.row;
  row.t = ref.t;
  row.hs_h = hs_norm(ref.b - fol.b, sync.s);
  row.hs_w = hall ? hs_norm(*ref.u - *fol.u, sync.s) : 0.0;
  const DeterminingWavenumber lb1 = lambda_b(ref.b, wp);
  const DeterminingWavenumber lb2 = lambda_b(fol.b, wp);
  row.lambda_b1 = lb1.finite ? lb1.lambda : std::numeric_limits<Real>::infinity();
  row.lambda_b2 = lb2.finite ? lb2.lambda : std::numeric_limits<Real>::infinity();
  d.lB = lambda_pair_max(lb1, lb2);
  row.Q_B = d.lB.finite ? d.lB.q : q_top + 1;
  if (hall) {
    const DeterminingWavenumber lu1 = lambda_u(*ref.u, wp);
    const DeterminingWavenumber lu2 = lambda_u(*fol.u, wp);
    row.lambda_u1 = lu1.finite ? lu1.lambda : std::numeric_limits<Real>::infinity();
    row.lambda_u2 = lu2.finite ? lu2.lambda : std::numeric_limits<Real>::infinity();
    d.lU = lambda_pair_max(lu1, lu2);
    row.Q_U = d.lU.finite ? d.lU.q : q_top + 1;
    row.saturated = !d.lB.finite || !d.lU.finite;
  } else {
    row.lambda_u1 = row.lambda_u2 = std::numeric_limits<Real>::quiet_NaN();
    row.Q_U = -1;
    row.saturated = !d.lB.finite;
  }
  row.energy1 = energy_of(ref);
  row.energy2 = energy_of(fol);
  return d;
}

}  // namespace

SyncRow sync_step(SimState& reference, SimState& follower, Stepper& ref_stepper,
                  Stepper& fol_stepper, const WavenumberParams& wp,
                  const SyncConfig& sync, Real dt) {
  ref_stepper.advance(reference, dt);
  fol_stepper.advance(follower, dt);

  StepDiagnostics d = diagnose(reference, follower, wp, sync);
  if (sync.assimilate) {
    const bool hall = sync.system == System::HallMHD;
    if (!d.lB.finite) {
      follower.b = reference.b;
      d.row.full_assimilation = true;
    } else {
      follower.b = assimilate_low_modes(reference.b, follower.b, d.lB.q);
    }
    if (hall) {
      if (!d.lU.finite) {
        *follower.u = *reference.u;
        d.row.full_assimilation = true;
      } else {
        *follower.u = assimilate_low_modes(*reference.u, *follower.u, d.lU.q);
      }
    }
    // The record reflects the enforced state.
    d.row.hs_h = hs_norm(reference.b - follower.b, sync.s);
    d.row.hs_w = hall ? hs_norm(*reference.u - *follower.u, sync.s) : 0.0;
    d.row.energy2 = energy_of(follower);
  }
  return d.row;
}

SyncResult run_sync(const TorusGrid& grid, const PhysicsParams& physics,
                    const WavenumberParams& wp, const SyncConfig& sync,
                    const SyncRunParams& rp) {
  sync.validate(wp, grid.n);
  const bool hall = sync.system == System::HallMHD;

  // Reference solution: random divergence-free data at the requested total
  // energy; for Hall-MHD the u:b amplitude split follows init_u_b_ratio
  // (1 = even energies).
  const Real rho = rp.init_u_b_ratio;
  const Real amp_b = hall ? std::sqrt(2.0 * rp.init_energy / (1.0 + rho * rho))
                          : std::sqrt(2.0 * rp.init_energy);
  SimState ref;
  ref.t = 0.0;
  ref.b = random_divfree_field(grid, rp.init_seed, rp.init_q_lo, rp.init_q_hi, amp_b);
  if (hall)
    ref.u = random_divfree_field(grid, rp.init_seed + 1, rp.init_q_lo, rp.init_q_hi,
                                 rho * amp_b);

  // Follower: reference plus a band-limited offset at the requested relative
  // amplitude (per field).
  const int pert_hi = sync.perturbation.q_hi >= 0 ? sync.perturbation.q_hi
                                                  : grid.block_q_max();
  SimState fol = ref;
  if (sync.perturbation.relative_amplitude > 0.0) {
    fol.b += random_divfree_field(grid, sync.perturbation.seed, sync.perturbation.q_lo,
                                  pert_hi,
                                  sync.perturbation.relative_amplitude * l2_norm(ref.b));
    if (hall)
      *fol.u += random_divfree_field(grid, sync.perturbation.seed + 1,
                                     sync.perturbation.q_lo, pert_hi,
                                     sync.perturbation.relative_amplitude * l2_norm(*ref.u));
  }

  Stepper stepper1(grid, sync.system, physics);
  Stepper stepper2(grid, sync.system, physics);

  SyncResult result;
  // Row 0: the raw perturbed difference, before any step or assimilation.
  result.rows.push_back(diagnose(ref, fol, wp, sync).row);

  const Real t_eps = 1e-12 * std::max(rp.t_end, 1.0);
  try {
    while (ref.t < rp.t_end - t_eps) {
      Real dt = std::min(cfl_dt(ref, physics, rp.dt_max, rp.c_cfl),
                         cfl_dt(fol, physics, rp.dt_max, rp.c_cfl));
      if (ref.t + dt > rp.t_end) dt = rp.t_end - ref.t;
      result.rows.push_back(sync_step(ref, fol, stepper1, stepper2, wp, sync, dt));
    }
  } catch (const BlowupError&) {
    result.blew_up = true;
  }
  return result;
}

std::optional<DecayFit> decay_fit(const std::vector<Real>& t, const std::vector<Real>& x,
                                  const DecayFitOptions& opt) {
  if (t.size() != x.size() || t.empty()) return std::nullopt;
  Real x_max = 0.0;
  for (Real v : x) x_max = std::max(x_max, v);
  if (x_max <= 0.0) return std::nullopt;
  const Real t_start = t.front() + opt.transient_fraction * (t.back() - t.front());
  const Real floor = opt.floor_rel * x_max;

  std::vector<Real> ts, ls;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_start || x[i] <= floor) continue;
    ts.push_back(t[i]);
    ls.push_back(std::log(x[i]));
  }
  if (static_cast<int>(ts.size()) < opt.min_samples) return std::nullopt;

  const Real n = static_cast<Real>(ts.size());
  Real st = 0, sl = 0, stt = 0, stl = 0, sll = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sl += ls[i];
    stt += ts[i] * ts[i];
    stl += ts[i] * ls[i];
    sll += ls[i] * ls[i];
  }
  const Real denom = n * stt - st * st;
  if (denom == 0.0) return std::nullopt;
  const Real slope = (n * stl - st * sl) / denom;
  const Real ss_tot = sll - sl * sl / n;
  DecayFit fit;
  fit.rate = -slope;
  fit.samples = static_cast<int>(ts.size());
  if (ss_tot == 0.0) {
    fit.goodness = 1.0;  // constant log-series is fit exactly
  } else {
    const Real intercept = (sl - slope * st) / n;
    Real ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const Real r = ls[i] - (intercept + slope * ts[i]);
      ss_res += r * r;
    }
    fit.goodness = 1.0 - ss_res / ss_tot;
  }
  return fit;
}

}  // namespace tmhd
