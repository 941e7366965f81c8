#pragma once

#include <optional>
#include <vector>

#include "tmhd/dynamics.hpp"
#include "tmhd/wavenumbers.hpp"

namespace tmhd {

struct PerturbationSpec {
  std::uint64_t seed = 2;
  int q_lo = 2;
  int q_hi = -1;              ///< -1: up to the grid's q_max
  Real relative_amplitude = 0.1;
};

/// Two-solution synchronization experiment configuration.  `s` must lie in
/// the interval where the decay estimate applies: (-n/r, n/r - 1) for EMHD and
/// (-min{n/r, delta, sigma}, n/r - 1) for Hall-MHD.
struct SyncConfig {
  System system = System::EMHD;
  Real s = -0.5;
  PerturbationSpec perturbation;
  bool assimilate = true;

  void validate(const WavenumberParams& wp, int n) const;
  std::pair<Real, Real> admissible_s_interval(const WavenumberParams& wp, int n) const;
};

/// Replace the follower's coefficients at every |k| < lambda_{Q+1} with the
/// reference's.  That set carries the full support of the chi multiplier, so
/// (reference - output)_{<=Q} vanishes exactly.  Q = -1 leaves only the mean
/// mode assimilated (|k| < 1).
Field assimilate_low_modes(const Field& reference, const Field& follower, int Q);

struct SyncRow {
  Real t = 0.0;
  Real hs_h = 0.0;        ///< ||b1 - b2||_{H^s}
  Real hs_w = 0.0;        ///< ||u - v||_{H^s} (Hall only, else 0)
  Real lambda_b1 = 0.0, lambda_b2 = 0.0;
  Real lambda_u1 = 0.0, lambda_u2 = 0.0;  ///< NaN for EMHD
  int Q_B = 0, Q_U = 0;                   ///< -1 for EMHD's Q_U
  bool saturated = false;                 ///< any Lambda saturated this step
  bool full_assimilation = false;         ///< saturation forced a full copy
  Real energy1 = 0.0, energy2 = 0.0;
};

struct SyncResult {
  std::vector<SyncRow> rows;
  bool blew_up = false;
};

/// One synchronization step: advance both states by dt, recompute the
/// determining wavenumbers of each solution, form the pairwise maxima, and
/// (when enabled) overwrite the follower's low modes below the corresponding
/// Q (the whole field when a wavenumber saturates).  The returned row records
/// the post-assimilation state.
SyncRow sync_step(SimState& reference, SimState& follower, Stepper& ref_stepper,
                  Stepper& fol_stepper, const WavenumberParams& wp,
                  const SyncConfig& sync, Real dt);

struct SyncRunParams {
  std::uint64_t init_seed = 1;
  int init_q_lo = 0;
  int init_q_hi = 2;
  Real init_energy = 1.0;
  /// Hall only: u amplitude as a multiple of the b amplitude, total energy
  /// preserved (the velocity and magnetic wavenumber conditions scale
  /// differently, so experiments may need uneven splits).
  Real init_u_b_ratio = 1.0;
  Real dt_max = 1e-3;
  Real c_cfl = 0.3;
  Real t_end = 0.0;
};

/// Evolve reference and follower, enforcing the low-mode agreement hypothesis
/// every step (when assimilate is on): compute Lambda for each solution, take
/// the pairwise max over the two solutions (Lambda_B / Lambda_U), overwrite the
/// follower below the corresponding Q.  A saturated Lambda assimilates the
/// full field that step and is flagged.  Row 0 records the raw perturbed
/// difference before any assimilation.
SyncResult run_sync(const TorusGrid& grid, const PhysicsParams& physics,
                    const WavenumberParams& wp, const SyncConfig& sync,
                    const SyncRunParams& rp);

/// Least-squares exponential fit of a decaying series: slope of log X(t) on
/// the post-transient window (samples after transient_fraction * t_span,
/// above floor_rel * max X).  Returns nullopt when fewer than min_samples
/// positive samples remain (degenerate fit).
struct DecayFit {
  Real rate = 0.0;       ///< X ~ exp(-rate * t), rate > 0 means decay
  Real goodness = 0.0;   ///< coefficient of determination of the log fit
  int samples = 0;
};
struct DecayFitOptions {
  Real transient_fraction = 0.1;
  Real floor_rel = 1e-12;
  int min_samples = 20;
};
std::optional<DecayFit> decay_fit(const std::vector<Real>& t, const std::vector<Real>& x,
                                  const DecayFitOptions& opt = {});

}  // namespace tmhd
