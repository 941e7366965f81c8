#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tmhd/field.hpp"
#include "tmhd/littlewood_paley.hpp"

namespace tmhd {

enum class System { EMHD, HallMHD };

/// Deterministic constant-in-time divergence-free forcing, band-limited to
/// low dyadic blocks (used by the time-average experiments).
struct ForcingSpec {
  std::string field = "b";  ///< "b" or "u"
  int q_lo = 0;
  int q_hi = 1;
  Real amplitude = 0.0;
  std::uint64_t seed = 7;
};

struct PhysicsParams {
  Real nu = 0.05;   ///< kinematic viscosity
  Real mu = 0.05;   ///< magnetic diffusivity
  Real d_i = 1.0;   ///< ion inertial parameter (EMHD normalization: 1)
  std::optional<ForcingSpec> forcing;

  // nu/mu = 0 is legal here (ideal runs, the whistler test); the
  // dissipation-dependent diagnostics enforce positivity separately.
  void validate() const {
    if (!(nu >= 0.0) || !(mu >= 0.0))
      throw ParameterError("PhysicsParams: nu and mu must be nonnegative");
    if (d_i < 0.0) throw ParameterError("PhysicsParams: d_i must be >= 0");
  }
};

struct SimState {
  Real t = 0.0;
  std::optional<Field> u;  ///< absent for EMHD
  Field b;
};

/// -curl((curl b) x b): the EMHD nonlinearity, dealiased.  The output is a
/// curl, hence divergence-free by construction.
Field emhd_nonlinear(const Field& b, Real d_i = 1.0);

/// Hall-MHD nonlinear terms: the u-equation right side (Leray-projected) and
/// the b-equation right side (a curl, hence solenoidal).
struct HallNonlinear {
  Field du;
  Field db;
};
HallNonlinear hall_mhd_nonlinear(const Field& u, const Field& b, Real d_i = 1.0);

/// Whistler-aware CFL bound:
///   dt = min(dt_max, C / (2pi k_max ||u||_inf + d_i (2pi k_max)^2 ||b||_inf)).
Real cfl_dt(const SimState& state, const PhysicsParams& p, Real dt_max, Real c_cfl = 0.3);

/// Time integrator: integrating-factor RK4, diffusion applied exactly via
/// exp(-4pi^2 mu |k|^2 dt) (and nu for u), nonlinearity explicit.
class Stepper {
 public:
  Stepper(const TorusGrid& grid, System system, const PhysicsParams& physics);

  /// Advance one step of size dt (caller enforces dt <= cfl_dt).  Throws
  /// BlowupError on NaN or on L^inf exceeding 1e6 x the initial scale.
  void advance(SimState& state, Real dt);

  System system() const { return system_; }
  const PhysicsParams& physics() const { return physics_; }
  const Field* forcing_b() const { return forcing_b_ ? &*forcing_b_ : nullptr; }
  const Field* forcing_u() const { return forcing_u_ ? &*forcing_u_ : nullptr; }

  /// Latest physical sup norms (refreshed each advance; used for CFL).
  Real last_linf_u() const { return linf_u_; }
  Real last_linf_b() const { return linf_b_; }

 private:
  void refresh_linf(const SimState& state);
  void apply_integrating_factor(Field& f, Real diffusivity, Real dt) const;

  TorusGrid grid_;
  System system_;
  PhysicsParams physics_;
  std::optional<Field> forcing_u_, forcing_b_;
  Real linf_u_ = 0.0, linf_b_ = 0.0;
  Real blowup_scale_ = 0.0;  // set on first advance
};

/// Per-step diagnostics recorded by simulate_run.
struct SeriesRow {
  Real t = 0.0;
  Real dt = 0.0;
  Real energy_u = 0.0;      ///< 1/2 ||u||_2^2
  Real energy_b = 0.0;
  Real dissipation_u = 0.0; ///< nu sum 4pi^2 |k|^2 |u^|^2
  Real dissipation_b = 0.0;
  std::vector<Real> spec_u; ///< ||Delta_q u||_2^2 for q = -1..q_max
  std::vector<Real> spec_b;
};

struct RunParams {
  Real dt_max = 1e-3;
  Real c_cfl = 0.3;
  Real t_end = 0.0;
  Real snapshot_cadence = 0.0;  ///< 0 disables intermediate snapshots
};

struct RunResult {
  std::vector<SeriesRow> series;
  bool blew_up = false;
  Real t_final = 0.0;
};

/// Drive a run from `state`, recording per-step diagnostics and invoking
/// `on_snapshot` at the fixed cadence (and at t = 0 and t_end).  On blow-up
/// the partial record is returned with blew_up set.
RunResult simulate_run(Stepper& stepper, SimState& state, const RunParams& rp,
                       const std::function<void(const SimState&)>& on_snapshot = {});

/// Dyadic L^2 spectrum {||Delta_q f||_2^2}, q = -1..q_max (no transforms).
std::vector<Real> block_l2sq_spectrum(const Field& f);

}  // namespace tmhd
