#pragma once

#include <array>

#include "tmhd/common.hpp"
#include "tmhd/grid.hpp"

namespace tmhd {

/// A three-component real vector field on the torus, stored as Fourier
/// coefficients over integer wavevectors in the basis e^{i 2pi k.x}.
///
/// Invariants (not enforced on every mutation, checked by the helpers below):
///   - Hermitian symmetry c(-k) = conj(c(k))  (real-valued samples);
///   - when used as a solenoidal field, |2pi k . c(k)| <= 1e-12 * max|c|.
struct Field {
  TorusGrid grid;
  std::array<ArrayXc, 3> c;

  Field() = default;
  explicit Field(const TorusGrid& g) : grid(g) {
    for (auto& comp : c) comp = ArrayXc::Zero(g.size());
  }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(Real a);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Real a, Field f);

/// Physical-space samples of a vector field: x_j = j/N * period, row-major.
struct GridSamples {
  TorusGrid grid;
  std::array<ArrayXr, 3> v;

  GridSamples() = default;
  explicit GridSamples(const TorusGrid& g) : grid(g) {
    for (auto& comp : v) comp = ArrayXr::Zero(g.size());
  }
};

// -- transform pair ---------------------------------------------------------

GridSamples to_physical(const Field& f);
Field from_physical(const GridSamples& s);

// -- differential operators (exact spectral symbols, 2pi factors included) --

/// (curl f)^(k) = i 2pi k x f^(k); k = (kx, ky, 0) when n = 2.
Field curl(const Field& f);

/// Divergence as a scalar spectral field: i 2pi k . f^(k).
ArrayXc divergence(const Field& f);

/// (laplacian f)^(k) = -4 pi^2 |k|^2 f^(k).
Field laplacian(const Field& f);

/// Gradient of a scalar spectral field: (i 2pi k_d a(k))_d.
Field gradient_of_scalar(const TorusGrid& g, const ArrayXc& a);

/// Orthogonal projection onto divergence-free fields; k = 0 passes through.
Field leray_project(const Field& f);

/// Zero every mode with |k_i| > dealias_fraction * N/2 in any dimension.
void dealias_inplace(Field& f);

/// Restore c(-k) = conj(c(k)) exactly (used after from_physical round trips).
void hermitian_symmetrize_inplace(Field& f);

// -- norms and inner products ----------------------------------------------

/// L^p norm of the pointwise Euclidean magnitude, p in [1, inf].  p = 2 is
/// evaluated spectrally (Parseval); other p by grid quadrature; p = inf is
/// the max over samples.  Pass p = infinity() for the sup norm.
Real lp_norm(const Field& f, Real p);

/// Spectral L^2 norm, no transform.
Real l2_norm(const Field& f);

/// L^2 inner product <f, g> = sum_k f^(k) . conj(g^(k)) (real part).
Real inner_product(const Field& f, const Field& g);

/// Max over grid points of the Frobenius norm of the Jacobian (d_j f_i),
/// j = 1..n, with 2pi factors.
Real grad_sup_norm(const Field& f);

/// max_k |c(k)| over components.
Real max_coefficient_magnitude(const Field& f);

/// max_k |2pi k . f^(k)|: the divergence invariant's left-hand side.
Real divergence_linf_coeff(const Field& f);

/// Convenience: true when divergence_linf_coeff <= tol * max|c|.
bool is_divergence_free(const Field& f, Real tol = 1e-12);

}  // namespace tmhd
