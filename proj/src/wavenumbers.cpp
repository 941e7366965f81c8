#include "tmhd/wavenumbers.hpp"

#include <algorithm>

#include "tmhd/transform.hpp"

namespace tmhd {
namespace {

constexpr Real kLambda0 = 1.0;  // lambda_0 = 2^0

}  // namespace

void WavenumberParams::validate_core(int n) const {
  if (!(r > n && r < 2 * n))
    throw ParameterError("WavenumberParams: r must lie in (n, 2n)");
  if (!(delta >= 0.0)) throw ParameterError("WavenumberParams: delta must be >= 0");
  if (!(sigma > -0.5 && sigma <= 1.0))
    throw ParameterError("WavenumberParams: sigma must lie in (-1/2, 1]");
  if (!(c_r > 0.0)) throw ParameterError("WavenumberParams: c_r must be positive");
  if (!(L > 0.0)) throw ParameterError("WavenumberParams: L must be positive");
  if (!(mu > 0.0) || !(nu > 0.0))
    throw ParameterError("WavenumberParams: mu and nu must be positive");
}

void WavenumberParams::validate_dissipation(int n) const {
  validate_core(n);
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterError("WavenumberParams: lemma range requires 0 < delta < 1");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw ParameterError("WavenumberParams: lemma range requires 0 < sigma < 1");
  const Real lo_b = std::max(2.0, 2.0 * delta + 1.0);
  if (!(delta_b > lo_b && delta_b < 3.0))
    throw ParameterError("WavenumberParams: delta_b must lie in (max{2, 2delta+1}, 3)");
  if (!(delta_u > 2.0 * sigma + 1.0 && delta_u < 3.0))
    throw ParameterError("WavenumberParams: delta_u must lie in (2sigma+1, 3)");
}

BlockProfile block_profile(const Field& f, Real r) {
  const TorusGrid& g = f.grid;
  BlockProfile p;
  p.q_max = g.block_q_max();
  p.r = r;
  const std::size_t nq = static_cast<std::size_t>(p.q_max) + 2;
  p.l2.resize(nq);
  p.lr.resize(nq);
  p.linf.resize(nq);
  p.grad_prefix.resize(nq);

  // One inverse transform set per block serves every norm; gradient prefixes
  // accumulate block gradients in physical space (partial sums telescope
  // over blocks, so the running field is exactly grad f_{<=q}).
  std::array<ArrayXr, 9> grad_accum;
  for (int i = 0; i < 3 * g.n; ++i) grad_accum[static_cast<std::size_t>(i)].setZero(g.size());
  ArrayXc work(g.size());

  for (int q = -1; q <= p.q_max; ++q) {
    const Field blk = dyadic_block(f, q);
    const std::size_t iq = static_cast<std::size_t>(q) + 1;
    p.l2[iq] = l2_norm(blk);

    ArrayXr mag2 = ArrayXr::Zero(g.size());
    for (int m = 0; m < 3; ++m) {
      work = blk.c[m];
      dft_inverse_inplace(g, work);
      mag2 += work.real().square();
    }
    if (std::isinf(r)) {
      p.lr[iq] = std::sqrt(mag2.maxCoeff());
    } else if (r == 2.0) {
      p.lr[iq] = p.l2[iq];
    } else {
      p.lr[iq] = std::pow(mag2.pow(r / 2.0).mean(), 1.0 / r);
    }
    p.linf[iq] = std::sqrt(mag2.maxCoeff());

    for (int m = 0; m < 3; ++m) {
      for (int d = 0; d < g.n; ++d) {
        for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
          work[idx] = Complex(0.0, kTwoPi * k[d]) * blk.c[m][idx];
        });
        dft_inverse_inplace(g, work);
        grad_accum[static_cast<std::size_t>(m) * g.n + d] += work.real();
      }
    }
    ArrayXr frob2 = ArrayXr::Zero(g.size());
    for (int i = 0; i < 3 * g.n; ++i)
      frob2 += grad_accum[static_cast<std::size_t>(i)].square();
    p.grad_prefix[iq] = std::sqrt(frob2.maxCoeff());
  }
  return p;
}

namespace {

// Shared scan over q = 0..q_max.  `high_value(p, q)` and `low_value(q)` give
// the two defining quantities; both must be strictly below the threshold.
template <typename HighFn, typename LowFn>
DeterminingWavenumber scan_wavenumber(int q_scan_max, int block_q_max, Real threshold,
                                      HighFn&& high_value, LowFn&& low_value) {
  DeterminingWavenumber last_fail;  // witness of the last inadmissible q
  last_fail.witness_p = -2;
  for (int q = 0; q <= q_scan_max; ++q) {
    bool ok = true;
    for (int pp = q + 1; pp <= block_q_max; ++pp) {
      const Real v = high_value(pp, q);
      if (!(v < threshold)) {
        ok = false;
        last_fail.witness_p = pp;
        last_fail.witness_value = v;
        break;
      }
    }
    if (ok) {
      const Real v = low_value(q);
      if (!(v < threshold)) {
        ok = false;
        last_fail.witness_p = -1;
        last_fail.witness_value = v;
      }
    }
    if (ok) {
      DeterminingWavenumber out;
      out.q = q;
      out.lambda = lambda_q(q);
      out.finite = true;
      out.witness_p = q == 0 ? -2 : last_fail.witness_p;
      out.witness_value = q == 0 ? 0.0 : last_fail.witness_value;
      return out;
    }
  }
  DeterminingWavenumber out;
  out.q = q_scan_max + 1;
  out.lambda = std::numeric_limits<Real>::infinity();
  out.finite = false;
  out.witness_p = last_fail.witness_p;
  out.witness_value = last_fail.witness_value;
  return out;
}

}  // namespace

DeterminingWavenumber lambda_b(const BlockProfile& prof, const WavenumberParams& wp, int n) {
  wp.validate_core(n);
  const Real nr = static_cast<Real>(n) / wp.r;
  const int q_scan = std::min(wp.q_max >= 0 ? wp.q_max : prof.q_max, prof.q_max);
  return scan_wavenumber(
      q_scan, prof.q_max, wp.c_r * wp.mu,
      [&](int p, int q) {
        return std::pow(wp.L * lambda_q(p - q), wp.delta) * std::pow(lambda_q(p), nr) *
               prof.at(prof.lr, p);
      },
      [&](int q) { return prof.at(prof.grad_prefix, q) / lambda_q(q); });
}

DeterminingWavenumber lambda_b(const Field& b, const WavenumberParams& wp) {
  return lambda_b(block_profile(b, wp.r), wp, b.grid.n);
}

DeterminingWavenumber lambda_u(const BlockProfile& prof, const WavenumberParams& wp, int n) {
  wp.validate_core(n);
  const int q_scan = std::min(wp.q_max >= 0 ? wp.q_max : prof.q_max, prof.q_max);
  return scan_wavenumber(
      q_scan, prof.q_max, wp.c_r * wp.nu,
      [&](int p, int q) {
        return std::pow(wp.L * lambda_q(p - q), wp.sigma) * prof.at(prof.linf, p) /
               lambda_q(q);
      },
      [&](int q) { return prof.at(prof.grad_prefix, q) / (lambda_q(q) * lambda_q(q)); });
}

DeterminingWavenumber lambda_u(const Field& u, const WavenumberParams& wp) {
  return lambda_u(block_profile(u, wp.r), wp, u.grid.n);
}

DeterminingWavenumber lambda_pair_max(const DeterminingWavenumber& a,
                                      const DeterminingWavenumber& b) {
  if (!a.finite) return a;
  if (!b.finite) return b;
  return a.lambda >= b.lambda ? a : b;
}

Real time_average(const std::vector<Real>& t, const std::vector<Real>& v, Real t0, Real T) {
  if (!(T > 0.0)) throw ParameterError("time_average: window length must be positive");
  if (t.size() != v.size() || t.size() < 2)
    throw ParameterError("time_average: need at least two samples");
  const Real t1 = t0 + T;
  const Real eps = 1e-12 * std::max({std::abs(t0), std::abs(t1), 1.0});
  if (t.front() > t0 + eps || t.back() < t1 - eps)
    throw ParameterError("time_average: samples do not cover the window");

  auto interp = [&](Real tq) {
    auto it = std::lower_bound(t.begin(), t.end(), tq);
    if (it == t.begin()) return v.front();
    if (it == t.end()) return v.back();
    const std::size_t hi = static_cast<std::size_t>(it - t.begin());
    const std::size_t lo = hi - 1;
    const Real w = (tq - t[lo]) / (t[hi] - t[lo]);
    return (1.0 - w) * v[lo] + w * v[hi];
  };

  Real integral = 0.0;
  Real prev_t = t0, prev_v = interp(t0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= t0 || t[i] >= t1) continue;
    integral += 0.5 * (prev_v + v[i]) * (t[i] - prev_t);
    prev_t = t[i];
    prev_v = v[i];
  }
  integral += 0.5 * (prev_v + interp(t1)) * (t1 - prev_t);
  return integral / T;
}

DissipationEstimate dissipation_number(const std::vector<Real>& t,
                                       const std::vector<std::vector<Real>>& spectra,
                                       const WavenumberParams& wp, FieldKind kind,
                                       const AveragingWindow& window) {
  if (t.size() != spectra.size()) throw ParameterError("dissipation_number: size mismatch");
  const Real dim = kind == FieldKind::Magnetic ? wp.delta_b : wp.delta_u;
  if (kind == FieldKind::Magnetic && !(dim > 1.0))
    throw ParameterError("dissipation_number: delta_b must exceed 1");
  if (kind == FieldKind::Velocity && !(dim > -1.0))
    throw ParameterError("dissipation_number: delta_u must exceed -1");

  std::vector<Real> weighted(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    Real acc = 0.0;
    for (std::size_t j = 0; j < spectra[i].size(); ++j) {
      const int q = static_cast<int>(j) - 1;
      acc += lambda_q(q) * lambda_q(q) * spectra[i][j];
    }
    weighted[i] = acc;
  }
  const Real diffusivity = kind == FieldKind::Magnetic ? wp.mu : wp.nu;
  DissipationEstimate est;
  est.window = window;
  est.epsilon = diffusivity * std::pow(kLambda0, dim) *
                time_average(t, weighted, window.t0, window.T);
  const Real expo = kind == FieldKind::Magnetic ? 1.0 / (dim - 1.0) : 1.0 / (1.0 + dim);
  est.kappa = est.epsilon == 0.0
                  ? 0.0
                  : std::pow(est.epsilon / std::pow(diffusivity, 3.0), expo);
  return est;
}

namespace {

Real intermittency_lhs(const BlockProfile& prof, const WavenumberParams& wp,
                       FieldKind kind, int n) {
  Real acc = 0.0;
  for (int q = -1; q <= prof.q_max; ++q) {
    if (kind == FieldKind::Magnetic) {
      const Real e = -1.0 + wp.delta_b + 2.0 * n / wp.r;
      const Real nrm = prof.at(prof.lr, q);
      acc += std::pow(lambda_q(q), e) * nrm * nrm;
    } else {
      const Real e = -1.0 + wp.delta_u;
      const Real nrm = prof.at(prof.linf, q);
      acc += std::pow(lambda_q(q), e) * nrm * nrm;
    }
  }
  return acc;
}

Real enstrophy_from_profile(const BlockProfile& prof) {
  Real acc = 0.0;
  for (int q = -1; q <= prof.q_max; ++q) {
    const Real nrm = prof.at(prof.l2, q);
    acc += lambda_q(q) * lambda_q(q) * nrm * nrm;
  }
  return acc;
}

}  // namespace

Real intermittency_ratio(const std::vector<Real>& t,
                         const std::vector<BlockProfile>& profiles,
                         const WavenumberParams& wp, FieldKind kind, int n,
                         const AveragingWindow& window) {
  if (t.size() != profiles.size()) throw ParameterError("intermittency_ratio: size mismatch");
  std::vector<Real> lhs(t.size()), rhs(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    lhs[i] = intermittency_lhs(profiles[i], wp, kind, n);
    rhs[i] = enstrophy_from_profile(profiles[i]);
  }
  const Real dim = kind == FieldKind::Magnetic ? wp.delta_b : wp.delta_u;
  const Real lhs_avg = time_average(t, lhs, window.t0, window.T);
  const Real rhs_avg = std::pow(kLambda0, dim) * time_average(t, rhs, window.t0, window.T);
  if (rhs_avg == 0.0) return 0.0;  // zero-field convention
  return lhs_avg / rhs_avg;
}

LemmaCheck lemma_pointwise_check(const BlockProfile& prof, const WavenumberParams& wp,
                                 FieldKind kind, int n) {
  wp.validate_dissipation(n);
  LemmaCheck out;
  DeterminingWavenumber lam =
      kind == FieldKind::Magnetic ? lambda_b(prof, wp, n) : lambda_u(prof, wp, n);
  out.saturated = !lam.finite;
  out.rhs = intermittency_lhs(prof, wp, kind, n);
  if (!lam.finite) {
    out.lhs = std::numeric_limits<Real>::infinity();
    out.ratio = std::numeric_limits<Real>::infinity();
    return out;
  }
  const Real excess = std::max(lam.lambda - kLambda0, 0.0);
  if (kind == FieldKind::Magnetic) {
    out.lhs = std::pow(wp.c_r * wp.mu, 2.0) * std::pow(excess, wp.delta_b - 1.0);
  } else {
    out.lhs = std::pow(wp.c_r * wp.nu, 2.0) * std::pow(excess, 1.0 + wp.delta_u);
  }
  out.ratio = out.rhs == 0.0 ? (out.lhs == 0.0 ? 0.0 : std::numeric_limits<Real>::infinity())
                             : out.lhs / out.rhs;
  return out;
}

AverageBoundReport average_bound_check(const std::vector<Real>& t_snap,
                                       const std::vector<DeterminingWavenumber>& lambdas,
                                       const std::vector<BlockProfile>& profiles,
                                       const std::vector<Real>& t_series,
                                       const std::vector<std::vector<Real>>& spectra,
                                       const WavenumberParams& wp, FieldKind kind, int n,
                                       const AveragingWindow& window) {
  if (t_snap.size() != lambdas.size() || t_snap.size() != profiles.size())
    throw ParameterError("average_bound_check: snapshot series size mismatch");
  AverageBoundReport rep;
  rep.kind = kind;

  // <Lambda> over non-saturated samples: saturated values are skipped (the
  // sentinel carries no number), their count reported.
  std::vector<Real> ts, ls;
  for (std::size_t i = 0; i < t_snap.size(); ++i) {
    if (lambdas[i].finite) {
      ts.push_back(t_snap[i]);
      ls.push_back(lambdas[i].lambda);
    } else {
      ++rep.saturated_samples;
    }
  }
  rep.samples = static_cast<int>(t_snap.size());
  if (ts.size() >= 2 && ts.front() <= window.t0 && ts.back() >= window.t0 + window.T) {
    rep.avg_lambda = time_average(ts, ls, window.t0, window.T);
  } else if (!ls.empty()) {
    // window not fully covered by finite samples: fall back to the plain mean
    rep.avg_lambda = 0.0;
    for (Real v : ls) rep.avg_lambda += v;
    rep.avg_lambda /= static_cast<Real>(ls.size());
  }

  const DissipationEstimate est = dissipation_number(t_series, spectra, wp, kind, window);
  rep.kappa = est.kappa;
  rep.epsilon = est.epsilon;
  rep.quotient = rep.avg_lambda / (kLambda0 + rep.kappa);
  rep.intermittency = intermittency_ratio(t_snap, profiles, wp, kind, n, window);
  return rep;
}

Real gradient_bernstein_ratio(const Field& f, Real r) {
  const int q_max = f.grid.block_q_max();
  const Real nr = static_cast<Real>(f.grid.n) / r;
  Real worst = 0.0;
  for (int q = -1; q <= q_max; ++q) {
    const Field blk = dyadic_block(f, q);
    const Real lr = lp_norm(blk, r);
    if (lr == 0.0) continue;
    const Real g = grad_sup_norm(blk);
    worst = std::max(worst, g / (std::pow(lambda_q(q), 1.0 + nr) * lr));
  }
  return worst;
}

BesovBoundCheck besov_bound_check(const Field& b, const WavenumberParams& wp,
                                  Real grad_bernstein_const) {
  const int n = b.grid.n;
  wp.validate_core(n);
  if (!(wp.delta > 1.0))
    throw ParameterError("besov_bound_check: requires delta > 1");

  BesovBoundCheck out;
  out.lambda = lambda_b(b, wp);
  out.m_delta = besov_sup_norm(b, wp.delta + n / wp.r, wp.r);

  // Geometric sum over p >= -1 of lambda_p^{1-delta} with lambda_{-1} = 1.
  const Real geo = 1.0 + 1.0 / (1.0 - std::pow(2.0, 1.0 - wp.delta));
  const Real c_high = std::pow(wp.L, wp.delta) * std::pow(kLambda0, 1.0 - wp.delta);
  const Real c_low = grad_bernstein_const * geo;
  // Factor 2: the first admissible dyadic beyond the threshold is at most
  // one octave above it.
  const Real c_total = 2.0 * std::max(c_high, c_low) / wp.c_r;
  out.bound = std::max(kLambda0, c_total * out.m_delta / wp.mu);
  out.ok = out.lambda.finite ? out.lambda.lambda <= out.bound : false;
  return out;
}

}  // namespace tmhd
