// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.
//
//   acceptance [--only 1,2,5] [--out DIR]
//
// Criterion 8 carries a known limitation, documented where it is evaluated:
// at unit energy the determining wavenumber saturates above the resolved
// band, the conservative saturation rule copies the whole field, and the
// difference vanishes identically, leaving nothing for the exponential fit.
// The criterion is still evaluated exactly as stated (its fit sub-check fails
// honestly); a reduced-amplitude companion with the identical protocol
// demonstrates the decay mechanism quantitatively.

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "support/corpus.hpp"
#include "support/lambda_oracle.hpp"
#include "tmhd/cli.hpp"
#include "tmhd/random_field.hpp"
#include "tmhd/report.hpp"
#include "tmhd/snapshot.hpp"
#include "tmhd/sync_lab.hpp"
#include "tmhd/validation.hpp"

using namespace tmhd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(Real v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

fs::path g_outdir = "acceptance_out";

// ---------------------------------------------------------------------------
// 1. Partition of unity at N = 128, n = 2, over every resolved wavevector.
Outcome criterion_partition() {
  const TorusGrid g{2, 128, 1.0, 2.0 / 3.0};
  const CutoffProfile cp;
  const int q_max = g.block_q_max();
  Real worst = 0.0;
  for_each_mode(g, [&](std::int64_t, const std::array<int, 3>& k) {
    const Real km = std::sqrt(static_cast<Real>(k[0]) * k[0] +
                              static_cast<Real>(k[1]) * k[1]);
    Real sum = 0.0;
    for (int q = -1; q <= q_max; ++q) sum += cp.phi_q(q, km);
    worst = std::max(worst, std::abs(sum - 1.0));
  });
  return {worst <= 1e-12, "max |sum phi_q - 1| = " + fmt(worst) + " (tol 1e-12)"};
}

// ---------------------------------------------------------------------------
// 2. Dyadic reconstruction (1e-12) and Bony identity (1e-10), 20 fields, N=64.
Outcome criterion_reconstruction_bony() {
  const TorusGrid g{2, 64, 1.0, 2.0 / 3.0};
  const CheckResult rec = check_reconstruction(g, 20);
  const CheckResult bony = check_bony_identity(g, 20);
  return {rec.pass && bony.pass,
          "reconstruction max " + fmt(rec.value) + " (tol 1e-12), bony max " +
              fmt(bony.value) + " (tol 1e-10)"};
}

// ---------------------------------------------------------------------------
// 3. Energy neutrality of the Hall nonlinearities, 20 fields.
Outcome criterion_energy_neutrality() {
  const TorusGrid g{2, 64, 1.0, 2.0 / 3.0};
  const auto checks = check_energy_neutrality(g, 20);
  bool pass = true;
  std::string detail;
  for (const auto& c : checks) {
    pass = pass && c.pass;
    detail += c.name + " max " + fmt(c.value) + "; ";
  }
  return {pass, detail + "(tol 1e-10)"};
}

// ---------------------------------------------------------------------------
// 4. Exact integrating-factor diffusion on a force-free single mode.
Outcome criterion_exact_diffusion() {
  const TorusGrid g{2, 64, 1.0, 2.0 / 3.0};
  PhysicsParams p;
  p.mu = 0.07;
  SimState st;
  st.b = Field(g);
  st.b.c[2][static_cast<std::int64_t>(1) * g.N] = Complex(0.0, -0.5);
  st.b.c[2][static_cast<std::int64_t>(g.N - 1) * g.N] = Complex(0.0, 0.5);
  Stepper stepper(g, System::EMHD, p);
  Real worst = 0.0;
  const std::int64_t idx = static_cast<std::int64_t>(1) * g.N;
  for (Real dt : {1e-3, 2.5e-4}) {
    for (int i = 0; i < 5; ++i) {
      const Complex before = st.b.c[2][idx];
      stepper.advance(st, dt);
      const Real expect = std::exp(-4.0 * kPi * kPi * p.mu * dt);
      worst = std::max(worst, std::abs(st.b.c[2][idx] / before - expect));
    }
  }
  return {worst <= 1e-12, "max per-step factor deviation = " + fmt(worst) + " (tol 1e-12)"};
}

// ---------------------------------------------------------------------------
// 5. Whistler dispersion within 1% of the linearization oracle, N = 64.
Outcome criterion_whistler() {
  DispersionParams dp;
  dp.N = 64;
  dp.kx = 8;
  dp.ky = 0;
  dp.B0 = 1.0;
  dp.amplitude = 1e-4;
  dp.periods = 4.0;
  const DispersionResult res = run_dispersion_experiment(dp);
  return {res.rel_error <= 0.01,
          "measured omega " + fmt(res.omega_measured) + " vs predicted " +
              fmt(res.omega_predicted) + ", rel err " + fmt(res.rel_error) +
              " (tol 0.01)"};
}

// ---------------------------------------------------------------------------
// 6. Energy inequality: nonincreasing discrete energy, balance residual <= 1%
//    of dissipation, for unforced EMHD and Hall-MHD runs at N = 64.
Outcome criterion_energy_inequality() {
  const TorusGrid g{2, 64, 1.0, 2.0 / 3.0};
  bool pass = true;
  std::string detail;
  for (const bool hall : {false, true}) {
    PhysicsParams p;
    p.mu = 0.05;
    p.nu = 0.05;
    SimState st;
    st.b = random_divfree_field(g, 31, 0, 3, 1.0);
    if (hall) st.u = random_divfree_field(g, 32, 0, 3, 1.0);
    Stepper stepper(g, hall ? System::HallMHD : System::EMHD, p);
    RunParams rp;
    rp.dt_max = 1e-4;
    rp.c_cfl = 0.3;
    rp.t_end = hall ? 2.5e-3 : 4e-3;
    const RunResult res = simulate_run(stepper, st, rp);
    if (res.blew_up) return {false, "unexpected blow-up"};

    bool monotone = true;
    Real dissipated = 0.0;
    for (std::size_t i = 1; i < res.series.size(); ++i) {
      const auto& a = res.series[i - 1];
      const auto& b = res.series[i];
      const Real ea = a.energy_b + a.energy_u;
      const Real eb = b.energy_b + b.energy_u;
      monotone = monotone && eb <= ea * (1.0 + 1e-12);
      dissipated += 0.5 *
                    (a.dissipation_b + a.dissipation_u + b.dissipation_b +
                     b.dissipation_u) *
                    (b.t - a.t);
    }
    const Real de = res.series.front().energy_b + res.series.front().energy_u -
                    res.series.back().energy_b - res.series.back().energy_u;
    const Real resid = std::abs(de - dissipated) / dissipated;
    pass = pass && monotone && resid <= 0.01;
    detail += std::string(hall ? "hall" : "emhd") + ": monotone=" +
              (monotone ? "yes" : "NO") + " residual=" + fmt(resid) + "; ";
  }
  return {pass, detail + "(tol 0.01)"};
}

// ---------------------------------------------------------------------------
// 7. Oracle equivalence for Lambda on a 100-field corpus.
Outcome criterion_oracle_equivalence() {
  const TorusGrid g{2, 32, 1.0, 2.0 / 3.0};
  WavenumberParams wp;
  wp.r = 3.0;
  wp.delta = 0.5;
  wp.sigma = 0.5;
  wp.c_r = 0.05;
  wp.mu = 0.05;
  wp.nu = 0.05;
  const int count = 100;
  int mismatches = 0, saturated = 0;
  for (int i = 0; i < count; ++i) {
    const Field f = testing::lambda_corpus_field(g, i, count);
    const DeterminingWavenumber lb = lambda_b(f, wp);
    const auto ob = oracle::lambda_b_bruteforce(f, wp);
    if (lb.q != ob.q || lb.finite != ob.finite) ++mismatches;
    const DeterminingWavenumber lu = lambda_u(f, wp);
    const auto ou = oracle::lambda_u_bruteforce(f, wp);
    if (lu.q != ou.q || lu.finite != ou.finite) ++mismatches;
    if (!lb.finite) ++saturated;
  }
  return {mismatches == 0,
          "0 mismatches required, got " + std::to_string(mismatches) + " over 2x" +
              std::to_string(count) + " scans (" + std::to_string(saturated) +
              " saturated cases exercised)"};
}

// ---------------------------------------------------------------------------
// 8/9 shared machinery.
struct SyncOutcome {
  Real ratio_h = 0.0, ratio_w = 0.0;
  Real control_ratio_h = 0.0, control_ratio_w = 0.0;
  std::optional<DecayFit> fit;
  int saturated_rows = 0;
  int q_b0 = 0, q_u0 = 0;
  bool blew_up = false;
};

SyncOutcome run_sync_pair(const TorusGrid& g, const PhysicsParams& ph,
                          const WavenumberParams& wp, SyncConfig sc,
                          const SyncRunParams& rp, const fs::path& csv_dir) {
  SyncOutcome out;
  sc.assimilate = true;
  const SyncResult assim = run_sync(g, ph, wp, sc, rp);
  sc.assimilate = false;
  const SyncResult control = run_sync(g, ph, wp, sc, rp);
  out.blew_up = assim.blew_up || control.blew_up;

  auto ratio = [](const std::vector<SyncRow>& rows, bool w) {
    if (rows.empty()) return 0.0;
    const Real r0 = w ? rows.front().hs_w : rows.front().hs_h;
    const Real r1 = w ? rows.back().hs_w : rows.back().hs_h;
    return r0 == 0.0 ? 0.0 : r1 / r0;
  };
  out.ratio_h = ratio(assim.rows, false);
  out.ratio_w = ratio(assim.rows, true);
  out.control_ratio_h = ratio(control.rows, false);
  out.control_ratio_w = ratio(control.rows, true);
  out.q_b0 = assim.rows.empty() ? -1 : assim.rows.front().Q_B;
  out.q_u0 = assim.rows.empty() ? -1 : assim.rows.front().Q_U;

  std::vector<Real> ts, hs;
  for (const SyncRow& row : assim.rows) {
    out.saturated_rows += row.saturated ? 1 : 0;
    ts.push_back(row.t);
    hs.push_back(row.hs_h);
  }
  out.fit = decay_fit(ts, hs);

  fs::create_directories(csv_dir);
  std::vector<std::vector<Real>> rows;
  for (const SyncRow& r : assim.rows)
    rows.push_back({r.t, r.hs_h, r.hs_w, r.lambda_b1, r.lambda_b2, r.lambda_u1,
                    r.lambda_u2, static_cast<Real>(r.Q_B), static_cast<Real>(r.Q_U),
                    r.saturated ? 1.0 : 0.0, r.energy1, r.energy2});
  write_report((csv_dir / "sync.csv").string(),
               {"t", "hs_norm_h", "hs_norm_w", "lambda_b1", "lambda_b2", "lambda_u1",
                "lambda_u2", "Q_B", "Q_U", "saturated", "energy1", "energy2"},
               rows);
  return out;
}

// Amplitude windows that land Lambda at lambda_{band-1} for band-limited
// data with |k| >= lambda_band: the low-mode gradient prefixes vanish
// exactly, so admissibility one octave below the band is governed by the
// high-frequency condition alone.  Window = [blocked at band-2, admissible
// at band-1).
struct AmplitudeWindow {
  Real lo = 0.0;
  Real hi = 0.0;
  Real mid() const { return std::sqrt(lo * hi); }
};

AmplitudeWindow magnetic_band_window(const TorusGrid& g, std::uint64_t seed, int band,
                                     const WavenumberParams& wp) {
  const Field probe = random_divfree_field(g, seed, band, band, 1.0);
  const Real base = lp_norm(dyadic_block(probe, band), wp.r) *
                    std::pow(lambda_q(band), static_cast<Real>(g.n) / wp.r);
  const Real th = wp.c_r * wp.mu;
  return {th / (std::pow(wp.L * 4.0, wp.delta) * base),
          th / (std::pow(wp.L * 2.0, wp.delta) * base)};
}

AmplitudeWindow velocity_band_window(const TorusGrid& g, std::uint64_t seed, int band,
                                     const WavenumberParams& wp) {
  const Field probe = random_divfree_field(g, seed, band, band, 1.0);
  const Real base = lp_norm(dyadic_block(probe, band),
                            std::numeric_limits<Real>::infinity());
  const Real th = wp.c_r * wp.nu;
  return {th * lambda_q(band - 2) / (std::pow(wp.L * 4.0, wp.sigma) * base),
          th * lambda_q(band - 1) / (std::pow(wp.L * 2.0, wp.sigma) * base)};
}

// 8. EMHD synchronization decay at the pinned configuration, plus the
//    reduced-amplitude companion (same protocol; amplitude is the only change).
Outcome criterion_sync_emhd() {
  const TorusGrid g{2, 64, 1.0, 2.0 / 3.0};
  PhysicsParams ph;
  ph.mu = 0.05;
  ph.nu = 0.05;
  WavenumberParams wp;
  wp.r = 3.0;
  wp.delta = 0.1;
  wp.sigma = 0.5;
  wp.c_r = 0.05;
  wp.mu = 0.05;
  wp.nu = 0.05;
  SyncConfig sc;
  sc.system = System::EMHD;
  sc.s = -0.5;
  sc.perturbation.seed = 2;
  sc.perturbation.q_lo = 2;
  sc.perturbation.q_hi = -1;
  sc.perturbation.relative_amplitude = 0.1;

  // (a) the pinned run: unit energy.
  SyncRunParams rp;
  rp.init_seed = 1;
  rp.init_q_lo = 0;
  rp.init_q_hi = 2;
  rp.init_energy = 1.0;
  rp.dt_max = 1e-3;
  rp.c_cfl = 0.3;
  rp.t_end = 2e-3;  // CFL budget: ~550 whistler-limited steps
  const SyncOutcome pinned = run_sync_pair(g, ph, wp, sc, rp, g_outdir / "c08_pinned");

  const bool ratio_ok = pinned.ratio_h <= 1e-3;
  const bool control_ok = pinned.control_ratio_h >= 10.0 * pinned.ratio_h &&
                          pinned.control_ratio_h > 0.0;
  const bool fit_ok = pinned.fit && pinned.fit->goodness >= 0.95;

  // (b) companion: identical protocol, amplitude reduced so Lambda resolves
  //     inside the band.  Low-band data ([0, 1]) scaled so the slowly
  //     decaying low-mode gradient conditions block q <= 1 while q = 2 is
  //     admissible: Lambda starts at lambda_2, and the per-step assimilation
  //     removes exactly the slow half of the perturbation band.  The
  //     (seed, amplitude) scan is deterministic and self-validating: it
  //     evaluates the wavenumber of each candidate directly and takes the
  //     first that lands at q = 2 with margin in both blocking conditions.
  SyncRunParams crp = rp;
  crp.init_q_lo = 0;
  crp.init_q_hi = 1;
  {
    const Real th = wp.c_r * wp.mu;
    bool found = false;
    for (std::uint64_t seed = 1; seed <= 64 && !found; ++seed) {
      const Field probe = random_divfree_field(g, seed, 0, 1, 1.0);
      const BlockProfile prof = block_profile(probe, wp.r);
      const Real g0 = prof.at(prof.grad_prefix, 0);
      const Real g1 = prof.at(prof.grad_prefix, 1);
      for (const Real x : {3.8, 3.5, 3.2, 2.9}) {
        const Real amp = x * th / g1;  // block-1 gradient at x * threshold
        Field scaled = probe;
        scaled *= amp;
        const DeterminingWavenumber lam = lambda_b(scaled, wp);
        if (lam.finite && lam.q == 2 && g0 * amp >= 1.05 * th) {
          crp.init_seed = seed;
          crp.init_energy = 0.5 * amp * amp;
          found = true;
          break;
        }
      }
    }
  }
  crp.dt_max = 2e-4;
  crp.t_end = 0.06;
  const SyncOutcome comp = run_sync_pair(g, ph, wp, sc, crp, g_outdir / "c08_companion");
  const bool comp_ok = comp.ratio_h <= 1e-3 &&
                       comp.control_ratio_h >= 10.0 * comp.ratio_h && comp.fit &&
                       comp.fit->goodness >= 0.95 && comp.saturated_rows == 0;

  std::ostringstream detail;
  detail << "pinned: ratio " << fmt(pinned.ratio_h) << " (<=1e-3 "
         << (ratio_ok ? "ok" : "FAIL") << "), control " << fmt(pinned.control_ratio_h)
         << " (>=10x " << (control_ok ? "ok" : "FAIL") << "), fit "
         << (pinned.fit ? fmt(pinned.fit->goodness) : std::string("degenerate"))
         << " (>=0.95 " << (fit_ok ? "ok" : "FAIL")
         << "; saturation copies the full field, h vanishes identically)";
  detail << " | companion(E=" << fmt(crp.init_energy) << "): ratio "
         << fmt(comp.ratio_h) << ", control " << fmt(comp.control_ratio_h)
         << ", Q_B(0)=" << comp.q_b0 << ", goodness "
         << (comp.fit ? fmt(comp.fit->goodness) : std::string("degenerate"))
         << (comp_ok ? " [mechanism demonstrated]" : " [companion FAIL]");
  return {ratio_ok && control_ok && fit_ok && comp_ok, detail.str()};
}

// 9. Hall-MHD synchronization decay at N = 48 (ratios and control
//    separation; no fit threshold here).  delta = sigma = 0.5 so the Hall
//    decay hypotheses delta, sigma > 1 - n/r hold.
Outcome criterion_sync_hall() {
  const TorusGrid g{2, 48, 1.0, 2.0 / 3.0};
  PhysicsParams ph;
  ph.mu = 0.05;
  ph.nu = 0.05;
  WavenumberParams wp;
  wp.r = 3.0;
  wp.delta = 0.5;
  wp.sigma = 0.5;
  wp.c_r = 0.05;
  wp.mu = 0.05;
  wp.nu = 0.05;
  SyncConfig sc;
  sc.system = System::HallMHD;
  sc.s = -0.4;
  sc.perturbation.seed = 3;
  sc.perturbation.q_lo = 2;
  sc.perturbation.q_hi = -1;
  sc.perturbation.relative_amplitude = 0.1;

  SyncRunParams rp;
  rp.init_seed = 5;
  rp.init_q_lo = 0;
  rp.init_q_hi = 2;
  rp.init_energy = 1.0;
  rp.dt_max = 1e-3;
  rp.c_cfl = 0.3;
  rp.t_end = 2e-3;
  const SyncOutcome pinned = run_sync_pair(g, ph, wp, sc, rp, g_outdir / "c09_pinned");
  const bool ratios_ok = pinned.ratio_h <= 1e-2 && pinned.ratio_w <= 1e-2;
  const bool control_ok = pinned.control_ratio_h >= 10.0 * pinned.ratio_h &&
                          pinned.control_ratio_w >= 10.0 * pinned.ratio_w &&
                          pinned.control_ratio_h > 0.0 && pinned.control_ratio_w > 0.0;

  // Companion at reduced amplitude: identical protocol, with each field's
  // amplitude placed in its own mid-grid admissibility window (the magnetic
  // and velocity conditions scale differently, hence the uneven split).
  SyncRunParams crp = rp;
  crp.init_q_lo = 3;
  crp.init_q_hi = 3;
  const Real amp_b = magnetic_band_window(g, crp.init_seed, 3, wp).mid();
  const Real amp_u = velocity_band_window(g, crp.init_seed + 1, 3, wp).mid();
  crp.init_energy = 0.5 * (amp_b * amp_b + amp_u * amp_u);
  crp.init_u_b_ratio = amp_u / amp_b;
  crp.dt_max = 2e-4;
  crp.t_end = 0.06;
  const SyncOutcome comp = run_sync_pair(g, ph, wp, sc, crp, g_outdir / "c09_companion");
  const bool comp_ok = comp.ratio_h <= 1e-2 && comp.ratio_w <= 1e-2 &&
                       comp.control_ratio_h >= 10.0 * comp.ratio_h &&
                       comp.control_ratio_w >= 10.0 * comp.ratio_w &&
                       comp.saturated_rows == 0;

  std::ostringstream detail;
  detail << "pinned: ratio_h " << fmt(pinned.ratio_h) << ", ratio_w "
         << fmt(pinned.ratio_w) << " (<=1e-2), control_h "
         << fmt(pinned.control_ratio_h) << ", control_w " << fmt(pinned.control_ratio_w)
         << " | companion: ratio_h " << fmt(comp.ratio_h) << ", ratio_w "
         << fmt(comp.ratio_w) << ", control_h " << fmt(comp.control_ratio_h)
         << ", control_w " << fmt(comp.control_ratio_w) << ", Q_B(0)=" << comp.q_b0
         << ", Q_U(0)=" << comp.q_u0
         << (comp_ok ? " [mechanism demonstrated]" : " [companion FAIL]");
  return {ratios_ok && control_ok && comp_ok, detail.str()};
}

// ---------------------------------------------------------------------------
// 10. Dissipation-number consistency on a forced quasi-steady run,
//     N = 64 vs N = 96.
struct ForcedRunAnalysis {
  Real lemma_max_ratio = 0.0;
  Real quotient = 0.0;
  Real intermittency = 0.0;
  int saturated = 0;
  bool ok = false;
};

ForcedRunAnalysis forced_run_analysis(int N, const WavenumberParams& wp) {
  const TorusGrid g{2, N, 1.0, 2.0 / 3.0};
  PhysicsParams ph;
  ph.mu = wp.mu;
  ph.nu = wp.nu;
  ph.forcing = ForcingSpec{"b", 0, 1, 2e-3, 11};

  SimState st;
  st.b = Field(g);
  Stepper stepper(g, System::EMHD, ph);
  RunParams rp;
  rp.dt_max = 1e-3;
  rp.c_cfl = 0.3;
  rp.t_end = 3.0;
  rp.snapshot_cadence = 0.05;

  std::vector<Real> t_snap;
  std::vector<BlockProfile> profiles;
  std::vector<DeterminingWavenumber> lambdas;
  auto on_snapshot = [&](const SimState& s) {
    t_snap.push_back(s.t);
    profiles.push_back(block_profile(s.b, wp.r));
    lambdas.push_back(lambda_b(profiles.back(), wp, g.n));
  };
  const RunResult res = simulate_run(stepper, st, rp, on_snapshot);

  ForcedRunAnalysis out;
  if (res.blew_up) return out;

  std::vector<Real> ts;
  std::vector<std::vector<Real>> spectra;
  for (const SeriesRow& row : res.series) {
    ts.push_back(row.t);
    spectra.push_back(row.spec_b);
  }

  const AveragingWindow window{2.0, 1.0};
  const AverageBoundReport rep = average_bound_check(
      t_snap, lambdas, profiles, ts, spectra, wp, FieldKind::Magnetic, g.n, window);
  out.quotient = rep.quotient;
  out.intermittency = rep.intermittency;
  out.saturated = rep.saturated_samples;

  // The pointwise lemma at every sampled time: one run-wide constant.
  for (const BlockProfile& prof : profiles) {
    const LemmaCheck lc = lemma_pointwise_check(prof, wp, FieldKind::Magnetic, g.n);
    if (lc.saturated) ++out.saturated;
    if (std::isfinite(lc.ratio))
      out.lemma_max_ratio = std::max(out.lemma_max_ratio, lc.ratio);
  }
  out.ok = out.saturated == 0 && std::isfinite(out.quotient) && out.quotient > 0.0;
  return out;
}

Outcome criterion_section5() {
  WavenumberParams wp;
  wp.r = 3.0;
  wp.delta = 0.5;
  wp.sigma = 0.5;
  wp.c_r = 0.05;
  wp.mu = 0.05;
  wp.nu = 0.05;
  wp.delta_b = 2.5;
  wp.delta_u = 2.5;

  const ForcedRunAnalysis a64 = forced_run_analysis(64, wp);
  const ForcedRunAnalysis a96 = forced_run_analysis(96, wp);
  const Real drift = std::abs(a96.quotient - a64.quotient) /
                     std::max({a64.quotient, a96.quotient, 1e-300});
  const bool pass = a64.ok && a96.ok && drift <= 0.20;
  std::ostringstream detail;
  detail << "lemma max ratio " << fmt(a64.lemma_max_ratio) << " (run-wide constant); "
         << "quotient <Lambda>/(1+kappa): N64 " << fmt(a64.quotient) << ", N96 "
         << fmt(a96.quotient) << ", drift " << fmt(drift) << " (tol 0.20); "
         << "intermittency ratio " << fmt(a64.intermittency) << "; saturated samples "
         << a64.saturated << "+" << a96.saturated;
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 11. Uniform Besov bound with the assembled constant, 100 fields, n = 3.
Outcome criterion_besov() {
  const TorusGrid g{3, 32, 1.0, 2.0 / 3.0};
  WavenumberParams wp;
  wp.r = 4.0;  // in (n, 2n) = (3, 6)
  wp.delta = 1.5;
  wp.sigma = 0.5;
  wp.c_r = 0.05;
  wp.mu = 1.0;
  wp.nu = 1.0;

  const int count = 100;
  std::vector<Field> corpus;
  corpus.reserve(count);
  Real grad_c = 0.0;
  for (int i = 0; i < count; ++i) {
    // Amplitudes low enough that no field saturates at mu = 1.
    Field f = testing::lambda_corpus_field(g, i, count);
    const Real norm = l2_norm(f);
    if (norm > 1e-3) f *= 1e-3 / norm;
    corpus.push_back(std::move(f));
    grad_c = std::max(grad_c, gradient_bernstein_ratio(corpus.back(), wp.r));
  }
  int failures = 0, saturated = 0;
  Real worst_margin = 0.0;
  for (const Field& f : corpus) {
    const BesovBoundCheck bc = besov_bound_check(f, wp, grad_c);
    if (!bc.lambda.finite) ++saturated;
    if (!bc.ok) ++failures;
    if (bc.bound > 0.0 && bc.lambda.finite)
      worst_margin = std::max(worst_margin, bc.lambda.lambda / bc.bound);
  }
  return {failures == 0 && saturated == 0,
          "0 violations required, got " + std::to_string(failures) + " (" +
              std::to_string(saturated) + " saturated); measured grad-Bernstein C = " +
              fmt(grad_c) + ", worst Lambda/bound = " + fmt(worst_margin)};
}

// ---------------------------------------------------------------------------
// 12. Byte determinism of CSV and snapshot outputs.
std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) return "<missing:" + p.string() + ">";
  return std::string(std::istreambuf_iterator<char>(is), {});
}

Outcome criterion_determinism() {
  const fs::path dir = g_outdir / "c12";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "cfg.json";
  std::ofstream(cfg_path) << R"json({
    "grid": {"n": 2, "N": 32},
    "physics": {"nu": 0.05, "mu": 0.05, "d_i": 1.0},
    "wavenumber": {"r": 3.0, "delta": 0.5, "sigma": 0.5, "c_r": 0.05},
    "run": {"dt_max": 5e-4, "T_end": 0.01, "snapshot_cadence": 0.005,
            "seed": 3, "init_band": [0, 2], "init_energy": 1e-6},
    "system": "emhd",
    "sync": {"s": -0.5, "perturbation": {"seed": 5, "band": [2, 4],
             "relative_amplitude": 0.1}, "assimilate": true},
    "averaging": {"t0": 0.0, "T": 0.01}
  })json";

  for (const char* sub : {"sim1", "sim2"})
    if (cli_dispatch({"simulate", "-c", cfg_path.string(), "-o",
                      (dir / sub).string()}) != 0)
      return {false, "simulate failed"};
  for (const char* sub : {"sync1", "sync2"})
    if (cli_dispatch({"sync", "-c", cfg_path.string(), "-o", (dir / sub).string()}) != 0)
      return {false, "sync failed"};

  bool same = slurp(dir / "sim1" / "series.csv") == slurp(dir / "sim2" / "series.csv");
  same = same && slurp(dir / "sim1" / "meta.json") == slurp(dir / "sim2" / "meta.json");
  for (const char* snap : {"b_000000.snap", "b_000001.snap", "b_000002.snap"})
    same = same && slurp(dir / "sim1" / "snapshots" / snap) ==
                       slurp(dir / "sim2" / "snapshots" / snap);
  same = same && slurp(dir / "sync1" / "sync.csv") == slurp(dir / "sync2" / "sync.csv");
  same = same && slurp(dir / "sync1" / "fit.csv") == slurp(dir / "sync2" / "fit.csv");
  return {same, same ? "CSV, snapshot and sidecar bytes identical across reruns"
                     : "outputs differ between identical runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
    } else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      g_outdir = argv[++i];
    }
  }
  fs::create_directories(g_outdir);

  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
    Real budget_s;  // stated runtime bound; 0 = none
  };
  const Entry entries[] = {
      {1, "partition of unity", criterion_partition, 1},
      {2, "dyadic reconstruction + Bony identity", criterion_reconstruction_bony, 10},
      {3, "Hall-term energy neutrality", criterion_energy_neutrality, 10},
      {4, "exact integrating-factor diffusion", criterion_exact_diffusion, 1},
      {5, "whistler dispersion", criterion_whistler, 60},
      {6, "energy inequality", criterion_energy_inequality, 120},
      {7, "determining-wavenumber oracle equivalence", criterion_oracle_equivalence, 60},
      {8, "EMHD synchronization decay", criterion_sync_emhd, 300},
      {9, "Hall-MHD synchronization decay", criterion_sync_hall, 600},
      {10, "forced-run dissipation-number consistency", criterion_section5, 900},
      {11, "uniform Besov bound", criterion_besov, 120},
      {12, "byte determinism", criterion_determinism, 0},
  };

  int failures = 0, ran = 0;
  for (const Entry& e : entries) {
    if (!only.empty() && !only.count(e.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const Real secs =
        std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = e.budget_s == 0.0 || secs <= e.budget_s;
    const bool pass = out.pass && in_budget;
    std::printf("criterion %02d %s %s: %s [%.1f s%s]\n", e.id, pass ? "PASS" : "FAIL",
                e.name, out.detail.c_str(), secs,
                in_budget ? "" : " OVER BUDGET");
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  std::printf("acceptance: %d/%d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
