#pragma once

#include <vector>

#include "tmhd/field.hpp"
#include "tmhd/littlewood_paley.hpp"

namespace tmhd {

/// Scalar parameters of the determining-wavenumber and dissipation-number
/// formulas.  mu/nu mirror the physics; L is the free constant in the
/// (L lambda_{p-q})^delta prefactor; q_max < 0 means "use the grid's block
/// range".
struct WavenumberParams {
  Real r = 3.0;        ///< integrability exponent, r in (n, 2n)
  Real delta = 0.5;    ///< magnetic high-frequency weight, >= 0
  Real sigma = 0.5;    ///< velocity weight, sigma in (-1/2, 1]
  Real c_r = 0.05;     ///< smallness constant
  Real L = 1.0;
  Real mu = 0.05;
  Real nu = 0.05;
  Real delta_b = 2.5;  ///< magnetic intermittency dimension
  Real delta_u = 2.5;  ///< velocity intermittency dimension
  int q_max = -1;

  void validate_core(int n) const;          ///< r range, delta, sigma, c_r
  void validate_dissipation(int n) const;   ///< delta_b/delta_u lemma ranges
};

/// Result of a determining-wavenumber scan.  When no q <= q_max is
/// admissible the value saturates at grid scale: finite = false and
/// lambda = +inf, never an extrapolated number.  witness_p /
/// witness_value describe the condition that blocked q - 1: witness_p >= 0
/// is a high-frequency block index, witness_p == -1 the low-mode gradient
/// condition, witness_p == -2 no witness (q == 0 or saturation).
struct DeterminingWavenumber {
  int q = 0;
  Real lambda = 1.0;
  bool finite = true;
  int witness_p = -2;
  Real witness_value = 0.0;
};

/// Per-field block quantities entering the scans and the averaging/Besov
/// diagnostics; computing them once per snapshot avoids repeated transforms.
struct BlockProfile {
  int q_max = 0;
  Real r = 2.0;
  std::vector<Real> l2;            ///< ||Delta_q f||_2, q = -1..q_max
  std::vector<Real> lr;            ///< ||Delta_q f||_r
  std::vector<Real> linf;          ///< ||Delta_q f||_inf
  std::vector<Real> grad_prefix;   ///< ||grad f_{<=q}||_inf, q = -1..q_max

  Real at(const std::vector<Real>& v, int q) const {
    return v.at(static_cast<std::size_t>(q) + 1);
  }
};

BlockProfile block_profile(const Field& f, Real r);

/// Magnetic determining wavenumber (strict inequalities as displayed):
///   Lambda_{b,r} = min{ lambda_q :
///     (L lambda_{p-q})^delta lambda_p^{n/r} ||b_p||_r < c_r mu  for all p > q,
///     lambda_q^{-1} ||grad b_{<=q}||_inf < c_r mu },  q = 0..q_max.
DeterminingWavenumber lambda_b(const Field& b, const WavenumberParams& wp);
DeterminingWavenumber lambda_b(const BlockProfile& prof, const WavenumberParams& wp, int n);

/// Velocity determining wavenumber; note the lambda_q^{-1} prefactor
/// (index q, not p) and the lambda_q^{-2} low-mode weight:
///   (L lambda_{p-q})^sigma lambda_q^{-1} ||u_p||_inf < c_r nu  for all p > q,
///   lambda_q^{-2} ||grad u_{<=q}||_inf < c_r nu.
DeterminingWavenumber lambda_u(const Field& u, const WavenumberParams& wp);
DeterminingWavenumber lambda_u(const BlockProfile& prof, const WavenumberParams& wp, int n);

/// max by lambda; saturation propagates.
DeterminingWavenumber lambda_pair_max(const DeterminingWavenumber& a,
                                      const DeterminingWavenumber& b);

/// Trapezoidal time average (1/T) int_{t0}^{t0+T} f dtau over a sampled
/// series; endpoints are linearly interpolated.  Samples must cover the
/// window.
Real time_average(const std::vector<Real>& t, const std::vector<Real>& v, Real t0, Real T);

struct AveragingWindow {
  Real t0 = 0.0;
  Real T = 1.0;
};

/// Dissipation-number estimate.
///   magnetic: eps_b = mu lambda_0^{delta_b} <sum lambda_q^2 ||b_q||_2^2>,
///             kappa_e = (eps_b / mu^3)^{1/(delta_b - 1)}   (delta_b > 1)
///   velocity: eps_u = nu lambda_0^{delta_u} <sum lambda_q^2 ||u_q||_2^2>,
///             kappa_u = (eps_u / nu^3)^{1/(1 + delta_u)}   (delta_u > -1)
struct DissipationEstimate {
  Real epsilon = 0.0;
  Real kappa = 0.0;
  AveragingWindow window;
  Real intermittency_ratio = 0.0;
};

enum class FieldKind { Magnetic, Velocity };

/// `spectra[i]` is the block L^2-squared spectrum at time t[i]
/// (as produced by block_l2sq_spectrum).
DissipationEstimate dissipation_number(const std::vector<Real>& t,
                                       const std::vector<std::vector<Real>>& spectra,
                                       const WavenumberParams& wp, FieldKind kind,
                                       const AveragingWindow& window);

/// Scale-localized intermittency quotient <LHS>/<RHS>:
///   magnetic: LHS = sum_q lambda_q^{-1+delta_b+2n/r} ||b_q||_r^2,
///             RHS = lambda_0^{delta_b} sum_q lambda_q^2 ||b_q||_2^2
///   velocity: LHS = sum_q lambda_q^{-1+delta_u} ||u_q||_inf^2,
///             RHS = lambda_0^{delta_u} sum_q lambda_q^2 ||u_q||_2^2
/// The magnetic exponent uses 2n/r (the displayed 6/r at n = 3); n = 2
/// reports are an extrapolation of the n = 3 formula.
Real intermittency_ratio(const std::vector<Real>& t,
                         const std::vector<BlockProfile>& profiles,
                         const WavenumberParams& wp, FieldKind kind, int n,
                         const AveragingWindow& window);

/// One-time pointwise inequality of the averaging lemmas:
///   magnetic: (c_r mu)^2 (Lambda_{b,r} - lambda_0)_+^{delta_b - 1} vs
///             sum_q lambda_q^{-1+delta_b+2n/r} ||b_q||_r^2
///   velocity: (c_r nu)^2 (Lambda_{u,r} - lambda_0)_+^{1 + delta_u} vs
///             sum_q lambda_q^{-1+delta_u} ||u_q||_inf^2
/// A saturated Lambda is reported as an infinite LHS (convention inf <= inf).
struct LemmaCheck {
  Real lhs = 0.0;
  Real rhs = 0.0;
  Real ratio = 0.0;  ///< lhs / rhs; 0 when both vanish
  bool saturated = false;
};
LemmaCheck lemma_pointwise_check(const BlockProfile& prof, const WavenumberParams& wp,
                                 FieldKind kind, int n);

/// Averaged comparison <Lambda> vs lambda_0 + kappa for one field.  Saturated
/// samples are skipped and counted, never extrapolated.
struct AverageBoundReport {
  FieldKind kind = FieldKind::Magnetic;
  Real avg_lambda = 0.0;
  Real kappa = 0.0;
  Real epsilon = 0.0;
  Real quotient = 0.0;          ///< <Lambda> / (lambda_0 + kappa)
  Real intermittency = 0.0;
  int samples = 0;
  int saturated_samples = 0;
};
/// t_snap indexes lambdas/profiles (snapshot cadence); t_series indexes the
/// dense per-step spectra feeding epsilon and kappa.
AverageBoundReport average_bound_check(const std::vector<Real>& t_snap,
                                       const std::vector<DeterminingWavenumber>& lambdas,
                                       const std::vector<BlockProfile>& profiles,
                                       const std::vector<Real>& t_series,
                                       const std::vector<std::vector<Real>>& spectra,
                                       const WavenumberParams& wp, FieldKind kind, int n,
                                       const AveragingWindow& window);

/// Largest ||grad f_q||_inf / (lambda_q^{1+n/r} ||f_q||_r) over the nonzero
/// blocks of a field: the measured gradient-Bernstein constant used to
/// assemble the Besov-bound constant.
Real gradient_bernstein_ratio(const Field& f, Real r);

/// Uniform Besov bound check: Lambda_{b,r} <= (C/mu) M_delta with
///   M_delta = sup_p lambda_p^{delta + n/r} ||b_p||_r,
///   C = 2 max{ L^delta lambda_0^{1-delta},
///              C_grad_bernstein sum_{p>=-1} lambda_p^{1-delta} } / c_r,
/// requiring delta > 1 (the geometric sum converges).  The zero field is the
/// vacuous case: Lambda = lambda_0, bound floor lambda_0.
struct BesovBoundCheck {
  DeterminingWavenumber lambda;
  Real m_delta = 0.0;
  Real bound = 0.0;
  bool ok = false;
};
BesovBoundCheck besov_bound_check(const Field& b, const WavenumberParams& wp,
                                  Real grad_bernstein_const);

}  // namespace tmhd
