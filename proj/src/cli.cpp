#include "tmhd/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "tmhd/random_field.hpp"
#include "tmhd/report.hpp"
#include "tmhd/snapshot.hpp"
#include "tmhd/validation.hpp"

namespace tmhd {
namespace {

namespace fs = std::filesystem;

constexpr const char* kProgramVersion = "tmhd 1.0.0";

void write_meta(const fs::path& outdir, const Config& cfg) {
  std::ofstream os(outdir / "meta.json", std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write metadata sidecar in " + outdir.string());
  os << "{\n  \"program\": \"" << kProgramVersion << "\",\n"
     << "  \"format_versions\": {\"snapshot\": 1, \"report\": 1},\n"
     << "  \"config\": " << cfg.to_json_string() << "\n}\n";
}

SimState make_initial_state(const Config& cfg) {
  SimState st;
  st.t = 0.0;
  const bool hall = cfg.system == System::HallMHD;
  const Real field_energy = hall ? cfg.run.init_energy / 2.0 : cfg.run.init_energy;
  const Real amp = std::sqrt(2.0 * field_energy);
  if (cfg.run.init_energy > 0.0) {
    st.b = random_divfree_field(cfg.grid, cfg.run.seed, cfg.run.init_q_lo,
                                cfg.run.init_q_hi, amp);
    if (hall)
      st.u = random_divfree_field(cfg.grid, cfg.run.seed + 1, cfg.run.init_q_lo,
                                  cfg.run.init_q_hi, amp);
  } else {
    st.b = Field(cfg.grid);
    if (hall) st.u = Field(cfg.grid);
  }
  return st;
}

std::vector<std::string> series_header(const Config& cfg) {
  std::vector<std::string> h{"t", "dt", "energy_u", "energy_b", "diss_u", "diss_b"};
  const int q_max = cfg.grid.block_q_max();
  for (int q = -1; q <= q_max; ++q) h.push_back("spec_b_" + std::to_string(q));
  if (cfg.system == System::HallMHD)
    for (int q = -1; q <= q_max; ++q) h.push_back("spec_u_" + std::to_string(q));
  return h;
}

std::vector<std::vector<Real>> series_rows(const Config& cfg,
                                           const std::vector<SeriesRow>& series) {
  std::vector<std::vector<Real>> rows;
  rows.reserve(series.size());
  for (const SeriesRow& r : series) {
    std::vector<Real> row{r.t, r.dt, r.energy_u, r.energy_b, r.dissipation_u,
                          r.dissipation_b};
    row.insert(row.end(), r.spec_b.begin(), r.spec_b.end());
    if (cfg.system == System::HallMHD)
      row.insert(row.end(), r.spec_u.begin(), r.spec_u.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_simulate(const Config& cfg, const fs::path& outdir) {
  cfg.validate();
  fs::create_directories(outdir / "snapshots");
  write_meta(outdir, cfg);

  SimState state = make_initial_state(cfg);
  Stepper stepper(cfg.grid, cfg.system, cfg.physics);

  std::vector<std::vector<Real>> manifest;
  int snap_idx = 0;
  auto on_snapshot = [&](const SimState& st) {
    char name[32];
    std::snprintf(name, sizeof(name), "b_%06d.snap", snap_idx);
    save_snapshot(st.b, st.t, "b", true, (outdir / "snapshots" / name).string());
    if (st.u) {
      std::snprintf(name, sizeof(name), "u_%06d.snap", snap_idx);
      save_snapshot(*st.u, st.t, "u", true, (outdir / "snapshots" / name).string());
    }
    manifest.push_back({static_cast<Real>(snap_idx), st.t});
    ++snap_idx;
  };

  RunParams rp{cfg.run.dt_max, cfg.run.c_cfl, cfg.run.t_end, cfg.run.snapshot_cadence};
  const RunResult result = simulate_run(stepper, state, rp, on_snapshot);

  write_report((outdir / "series.csv").string(), series_header(cfg),
               series_rows(cfg, result.series));
  write_report((outdir / "snapshots" / "manifest.csv").string(), {"idx", "t"}, manifest);

  if (result.blew_up) {
    std::cerr << "blow-up detected at t = " << result.t_final
              << "; partial record written to " << outdir << "\n";
    return 3;
  }
  std::cout << "simulate: " << result.series.size() - 1 << " steps to t = "
            << result.t_final << ", outputs in " << outdir << "\n";
  return 0;
}

struct SnapshotSeries {
  std::vector<Real> t;
  std::vector<Field> b;
  std::vector<Field> u;  ///< empty for EMHD
};

SnapshotSeries load_snapshot_series(const fs::path& rundir, bool hall) {
  const fs::path snapdir = rundir / "snapshots";
  const ParsedReport manifest = read_report((snapdir / "manifest.csv").string());
  SnapshotSeries out;
  for (const auto& row : manifest.rows) {
    const int idx = static_cast<int>(row.at(0));
    char name[32];
    std::snprintf(name, sizeof(name), "b_%06d.snap", idx);
    LoadedSnapshot snap = load_snapshot((snapdir / name).string());
    out.t.push_back(snap.header.time);
    out.b.push_back(std::move(snap.field));
    if (hall) {
      std::snprintf(name, sizeof(name), "u_%06d.snap", idx);
      out.u.push_back(load_snapshot((snapdir / name).string()).field);
    }
  }
  return out;
}

void write_lambda_report(const fs::path& path, const std::vector<Real>& t,
                         const std::vector<DeterminingWavenumber>& lams) {
  std::vector<std::vector<Real>> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& l = lams[i];
    rows.push_back({t[i], static_cast<Real>(l.q), l.lambda, l.finite ? 1.0 : 0.0,
                    static_cast<Real>(l.witness_p), l.witness_value});
  }
  write_report(path.string(), {"t", "q", "lambda", "finite", "witness_p", "witness_value"},
               rows);
}

int cmd_analyze(const Config& cfg, const fs::path& rundir, const fs::path& outdir) {
  cfg.validate(false, true);
  fs::create_directories(outdir);
  write_meta(outdir, cfg);
  const bool hall = cfg.system == System::HallMHD;
  const int n = cfg.grid.n;

  // Per-step L^2 spectra from the run series (kappa, epsilon), per-snapshot
  // profiles (Lambda, L^r/L^inf quantities).
  const ParsedReport series = read_report((rundir / "series.csv").string());
  std::vector<Real> ts;
  std::vector<std::vector<Real>> spec_b, spec_u;
  const int q_max = cfg.grid.block_q_max();
  const std::size_t nq = static_cast<std::size_t>(q_max) + 2;
  const std::size_t expected_width = 6 + nq * (hall ? 2 : 1);
  if (!series.rows.empty() && series.rows.front().size() != expected_width)
    throw ConfigError("analyze: run series does not match the configured grid/system");
  for (const auto& row : series.rows) {
    ts.push_back(row.at(0));
    spec_b.emplace_back(row.begin() + 6, row.begin() + 6 + nq);
    if (hall) spec_u.emplace_back(row.begin() + 6 + nq, row.begin() + 6 + 2 * nq);
  }

  const SnapshotSeries snaps = load_snapshot_series(rundir, hall);
  std::vector<BlockProfile> prof_b, prof_u;
  std::vector<DeterminingWavenumber> lam_b, lam_u;
  for (std::size_t i = 0; i < snaps.t.size(); ++i) {
    prof_b.push_back(block_profile(snaps.b[i], cfg.wavenumber.r));
    lam_b.push_back(lambda_b(prof_b.back(), cfg.wavenumber, n));
    if (hall) {
      prof_u.push_back(block_profile(snaps.u[i], cfg.wavenumber.r));
      lam_u.push_back(lambda_u(prof_u.back(), cfg.wavenumber, n));
    }
  }

  write_lambda_report(outdir / "lambda_b.csv", snaps.t, lam_b);
  if (hall) write_lambda_report(outdir / "lambda_u.csv", snaps.t, lam_u);

  // Pointwise lemma inequality at every snapshot.
  {
    std::vector<std::vector<Real>> rows;
    for (std::size_t i = 0; i < snaps.t.size(); ++i) {
      const LemmaCheck lc =
          lemma_pointwise_check(prof_b[i], cfg.wavenumber, FieldKind::Magnetic, n);
      rows.push_back({snaps.t[i], lc.lhs, lc.rhs, lc.ratio, lc.saturated ? 1.0 : 0.0});
    }
    write_report((outdir / "lemma_b.csv").string(), {"t", "lhs", "rhs", "ratio", "saturated"},
                 rows);
  }
  if (hall) {
    std::vector<std::vector<Real>> rows;
    for (std::size_t i = 0; i < snaps.t.size(); ++i) {
      const LemmaCheck lc =
          lemma_pointwise_check(prof_u[i], cfg.wavenumber, FieldKind::Velocity, n);
      rows.push_back({snaps.t[i], lc.lhs, lc.rhs, lc.ratio, lc.saturated ? 1.0 : 0.0});
    }
    write_report((outdir / "lemma_u.csv").string(), {"t", "lhs", "rhs", "ratio", "saturated"},
                 rows);
  }

  // Averaged comparison <Lambda> vs lambda_0 + kappa: Lambda and
  // the intermittency quantities from snapshots, epsilon/kappa from the dense
  // per-step series.
  {
    std::vector<std::vector<Real>> rows;
    const AverageBoundReport rb =
        average_bound_check(snaps.t, lam_b, prof_b, ts, spec_b, cfg.wavenumber,
                            FieldKind::Magnetic, n, cfg.averaging);
    rows.push_back({0.0, rb.avg_lambda, rb.kappa, rb.epsilon, rb.quotient, rb.intermittency,
                    static_cast<Real>(rb.samples), static_cast<Real>(rb.saturated_samples)});
    if (hall) {
      const AverageBoundReport ru =
          average_bound_check(snaps.t, lam_u, prof_u, ts, spec_u, cfg.wavenumber,
                              FieldKind::Velocity, n, cfg.averaging);
      rows.push_back({1.0, ru.avg_lambda, ru.kappa, ru.epsilon, ru.quotient,
                      ru.intermittency, static_cast<Real>(ru.samples),
                      static_cast<Real>(ru.saturated_samples)});
    }
    write_report((outdir / "summary.csv").string(),
                 {"kind", "avg_lambda", "kappa", "epsilon", "quotient", "intermittency",
                  "samples", "saturated_samples"},
                 rows);
  }

  // The uniform Besov bound applies when delta > 1.
  if (cfg.wavenumber.delta > 1.0) {
    Real grad_c = 0.0;
    for (const Field& b : snaps.b)
      grad_c = std::max(grad_c, gradient_bernstein_ratio(b, cfg.wavenumber.r));
    std::vector<std::vector<Real>> rows;
    for (std::size_t i = 0; i < snaps.t.size(); ++i) {
      const BesovBoundCheck bc = besov_bound_check(snaps.b[i], cfg.wavenumber, grad_c);
      rows.push_back({snaps.t[i], bc.lambda.lambda, bc.m_delta, bc.bound,
                      bc.ok ? 1.0 : 0.0});
    }
    write_report((outdir / "besov.csv").string(), {"t", "lambda", "m_delta", "bound", "ok"},
                 rows);
  }

  std::cout << "analyze: " << snaps.t.size() << " snapshots processed, reports in "
            << outdir << "\n";
  return 0;
}

int cmd_sync(const Config& cfg, const fs::path& outdir) {
  cfg.validate(true, false);
  fs::create_directories(outdir);
  write_meta(outdir, cfg);

  const SyncResult result =
      run_sync(cfg.grid, cfg.physics, cfg.wavenumber, cfg.sync, cfg.sync_run());

  std::vector<std::vector<Real>> rows;
  std::vector<Real> ts, hs;
  for (const SyncRow& r : result.rows) {
    rows.push_back({r.t, r.hs_h, r.hs_w, r.lambda_b1, r.lambda_b2, r.lambda_u1,
                    r.lambda_u2, static_cast<Real>(r.Q_B), static_cast<Real>(r.Q_U),
                    r.saturated ? 1.0 : 0.0, r.energy1, r.energy2});
    ts.push_back(r.t);
    hs.push_back(r.hs_h);
  }
  write_report((outdir / "sync.csv").string(),
               {"t", "hs_norm_h", "hs_norm_w", "lambda_b1", "lambda_b2", "lambda_u1",
                "lambda_u2", "Q_B", "Q_U", "saturated", "energy1", "energy2"},
               rows);

  const auto fit = decay_fit(ts, hs);
  const Real ratio = hs.empty() || hs.front() == 0.0
                         ? 0.0
                         : hs.back() / hs.front();
  std::vector<std::vector<Real>> fitrow{{fit ? fit->rate : 0.0, fit ? fit->goodness : 0.0,
                                         fit ? static_cast<Real>(fit->samples) : 0.0,
                                         ratio}};
  write_report((outdir / "fit.csv").string(), {"rate", "goodness", "samples", "ratio"},
               fitrow);

  std::cout << "sync: " << result.rows.size() << " rows, terminal/initial ratio = "
            << ratio;
  if (fit)
    std::cout << ", decay rate = " << fit->rate << ", goodness = " << fit->goodness;
  else
    std::cout << ", decay fit degenerate";
  std::cout << "\n";
  return result.blew_up ? 3 : 0;
}

int cmd_validate(const fs::path& outdir, bool have_outdir) {
  const std::vector<CheckResult> results = run_validation_suite();
  bool all_pass = true;
  std::cout << std::left << std::setw(34) << "check" << std::setw(14) << "value"
            << std::setw(14) << "threshold" << "status\n";
  std::vector<std::vector<Real>> rows;
  char buf[32];
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << std::left << std::setw(34) << r.name;
    std::snprintf(buf, sizeof(buf), "%-14.3e", r.value);
    std::cout << buf;
    std::snprintf(buf, sizeof(buf), "%-14.3e", r.threshold);
    std::cout << buf << (r.pass ? "PASS" : "FAIL") << "\n";
    rows.push_back({r.value, r.threshold, r.pass ? 1.0 : 0.0});
  }
  if (have_outdir) {
    fs::create_directories(outdir);
    write_report((outdir / "validate.csv").string(), {"value", "threshold", "pass"}, rows);
  }
  std::cout << (all_pass ? "all checks passed\n" : "FAILURES present\n");
  return all_pass ? 0 : 1;
}

int cmd_dispersion(const DispersionParams& dp, const fs::path& outdir, bool have_outdir) {
  const DispersionResult res = run_dispersion_experiment(dp);
  std::cout << "whistler dispersion: measured omega = " << res.omega_measured
            << ", predicted = " << res.omega_predicted
            << ", relative error = " << res.rel_error << "\n";
  if (have_outdir) {
    fs::create_directories(outdir);
    std::vector<std::vector<Real>> rows;
    for (std::size_t i = 0; i < res.t.size(); ++i)
      rows.push_back({res.t[i], res.phase[i]});
    write_report((outdir / "dispersion.csv").string(), {"t", "phase"}, rows);
    std::vector<std::vector<Real>> summary{
        {res.omega_measured, res.omega_predicted, res.rel_error}};
    write_report((outdir / "dispersion_summary.csv").string(),
                 {"omega_measured", "omega_predicted", "rel_error"}, summary);
  }
  return 0;
}

}  // namespace

DispersionResult run_dispersion_experiment(const DispersionParams& dp) {
  TorusGrid grid{2, dp.N, 1.0, 2.0 / 3.0};
  grid.validate();
  if (dp.kx == 0 && dp.ky == 0)
    throw ParameterError("dispersion: perturbed mode must be nonzero");

  // Background along x (in-plane: an out-of-plane uniform field produces no
  // linear response in 2.5-D since k . e_B = 0 for every resolved mode).
  Field b(grid);
  b.c[0][0] = Complex(dp.B0, 0.0);

  // Perturbation at +/-k, polarized along e_perp = z x k_hat; rotation about
  // k_hat exchanges it with the z polarization at the whistler frequency.
  const Real kmag = std::sqrt(static_cast<Real>(dp.kx) * dp.kx +
                              static_cast<Real>(dp.ky) * dp.ky);
  const Real ex = -static_cast<Real>(dp.ky) / kmag;  // z x k_hat
  const Real ey = static_cast<Real>(dp.kx) / kmag;
  const int N = dp.N;
  auto bin = [N](int k) { return (k % N + N) % N; };
  const std::int64_t idx_p = static_cast<std::int64_t>(bin(dp.kx)) * N + bin(dp.ky);
  const std::int64_t idx_m = static_cast<std::int64_t>(bin(-dp.kx)) * N + bin(-dp.ky);
  const Complex w(0.5 * dp.amplitude, 0.0);
  b.c[0][idx_p] = ex * w;
  b.c[1][idx_p] = ey * w;
  b.c[0][idx_m] = std::conj(ex * w);
  b.c[1][idx_m] = std::conj(ey * w);

  const Real omega = dp.d_i * kTwoPi * kTwoPi * dp.B0 * std::abs(dp.kx) * kmag;

  PhysicsParams physics;
  physics.mu = 0.0;
  physics.nu = 0.0;
  physics.d_i = dp.d_i;
  SimState state;
  state.b = std::move(b);
  Stepper stepper(grid, System::EMHD, physics);

  DispersionResult out;
  out.omega_predicted = omega;
  const Real t_end = dp.periods * kTwoPi / omega;

  Real prev_phase = 0.0;
  Real offset = 0.0;
  bool first = true;
  auto record = [&]() {
    const Complex c_perp = ex * state.b.c[0][idx_p] + ey * state.b.c[1][idx_p];
    const Complex c_z = state.b.c[2][idx_p];
    const Complex zeta = c_perp + Complex(0.0, 1.0) * c_z;
    Real ph = std::arg(zeta);
    if (!first) {
      while (ph + offset - prev_phase > kPi) offset -= kTwoPi;
      while (ph + offset - prev_phase < -kPi) offset += kTwoPi;
    }
    first = false;
    prev_phase = ph + offset;
    out.t.push_back(state.t);
    out.phase.push_back(prev_phase);
  };

  record();
  while (state.t < t_end) {
    Real dt = cfl_dt(state, physics, 1e-2, dp.c_cfl);
    if (state.t + dt > t_end) dt = t_end - state.t;
    stepper.advance(state, dt);
    record();
  }

  // Least-squares slope of the unwrapped phase.
  const Real n = static_cast<Real>(out.t.size());
  Real st = 0, sp = 0, stt = 0, stp = 0;
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    st += out.t[i];
    sp += out.phase[i];
    stt += out.t[i] * out.t[i];
    stp += out.t[i] * out.phase[i];
  }
  const Real slope = (n * stp - st * sp) / (n * stt - st * st);
  out.omega_measured = std::abs(slope);
  out.rel_error = std::abs(out.omega_measured - out.omega_predicted) / out.omega_predicted;
  return out;
}

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"pseudo-spectral Hall/electron-MHD with Littlewood-Paley diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out_path, run_path;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    if (need_config)
      sub->add_option("-c,--config", config_path, "config file (JSON)")->required();
    sub->add_option("-s,--set", overrides, "override config entries: key.path=value");
    sub->add_option("-o,--out", out_path, "output directory")->required();
  };

  CLI::App* sim = app.add_subcommand("simulate", "time-integrate a run, write snapshots");
  add_common(sim, true);
  CLI::App* ana = app.add_subcommand("analyze", "determining-wavenumber reports from a run");
  add_common(ana, true);
  ana->add_option("-r,--run", run_path, "run directory produced by simulate")->required();
  CLI::App* syn = app.add_subcommand("sync", "two-solution synchronization harness");
  add_common(syn, true);
  CLI::App* val = app.add_subcommand("validate", "spectral/paraproduct validation table");
  val->add_option("-o,--out", out_path, "output directory (optional)");
  CLI::App* dsp = app.add_subcommand("dispersion", "whistler linear dispersion test");
  DispersionParams dparams;
  dsp->add_option("-N,--N", dparams.N, "grid resolution");
  dsp->add_option("--B0", dparams.B0, "background field magnitude");
  dsp->add_option("--kx", dparams.kx, "perturbed mode kx");
  dsp->add_option("--ky", dparams.ky, "perturbed mode ky");
  dsp->add_option("--amplitude", dparams.amplitude, "perturbation amplitude");
  dsp->add_option("--periods", dparams.periods, "number of predicted periods to run");
  dsp->add_option("-o,--out", out_path, "output directory (optional)");

  try {
    std::vector<const char*> argv;
    argv.push_back("tmhd");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed() || ana->parsed() || syn->parsed()) {
      const Config cfg = load_config(config_path, overrides);
      if (sim->parsed()) return cmd_simulate(cfg, out_path);
      if (ana->parsed()) return cmd_analyze(cfg, run_path, out_path);
      return cmd_sync(cfg, out_path);
    }
    if (val->parsed()) return cmd_validate(out_path, !out_path.empty());
    if (dsp->parsed()) return cmd_dispersion(dparams, out_path, !out_path.empty());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BlowupError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace tmhd
