#pragma once

#include <optional>
#include <vector>

#include "tmhd/field.hpp"

namespace tmhd {

/// Smooth radial cutoff chi with chi = 1 on [0, 3/4], chi = 0 on [1, inf),
/// and a symmetric C^inf bridge on (3/4, 1) built from g(x) = exp(-1/x):
/// psi(x) = g(x) / (g(x) + g(1-x)), chi(t) = 1 - psi(4t - 3).
/// By symmetry chi(7/8) = 1/2 exactly.  phi(t) = chi(t/2) - chi(t) is
/// nonnegative with support in [3/4, 2].
struct CutoffProfile {
  Real bridge_lo = 0.75;
  Real bridge_hi = 1.0;

  Real chi(Real t) const;

  /// phi_q(|k|): the block-q multiplier; q = -1 is chi itself.
  Real phi_q(int q, Real kmag) const;
};

/// The sequence {Delta_q f} for q = -1 .. q_max, with q_max derived from the
/// dealiased band (blocks above are identically zero).
struct DyadicBlocks {
  TorusGrid grid;
  int q_max = 0;
  std::vector<Field> blocks;  ///< blocks[q + 1] is Delta_q f

  const Field& block(int q) const { return blocks.at(static_cast<std::size_t>(q) + 1); }
};

/// Delta_q f: multiplier phi_q(|k|) applied in Fourier space.
Field dyadic_block(const Field& f, int q);

DyadicBlocks decompose(const Field& f);

/// f_{<=Q}: the single multiplier chi(|k| / lambda_{Q+1}) (telescoped sum).
Field partial_sum(const Field& f, int Q);

/// f_{(P,Q]} = f_{<=Q} - f_{<=P}.  Requires -1 <= P <= Q.
Field band_sum(const Field& f, int P, int Q);

/// tilde f_q = sum_{|p-q|<=1} Delta_p f.
Field tilde_block(const Field& f, int q);

/// ||f||_{H^s} = (sum_q lambda_q^{2s} ||Delta_q f||_2^2)^{1/2}, lambda_{-1}=1.
Real hs_norm(const Field& f, Real s);

/// sup_p lambda_p^s ||Delta_p f||_{L^r}  (Besov B^s_{r,inf} seminorm-style sup).
Real besov_sup_norm(const Field& f, Real s, Real r);

/// Bony paraproduct decomposition of the componentwise product u.v, each
/// pairwise product formed pseudo-spectrally with the 2/3 dealias mask.
/// low_high + high_low + resonant reconstructs the dealiased product.
struct BonySplit {
  Field low_high;  ///< sum_q u_{<=q-2} v_q
  Field high_low;  ///< sum_q u_q v_{<=q-2}
  Field resonant;  ///< sum_q tilde u_q v_q
};
BonySplit bony_split(const Field& u, const Field& v);

/// Componentwise physical-space product with dealiasing (shared by the
/// paraproduct and the commutators).
Field dealiased_product(const Field& u, const Field& v);

/// [Delta_q, u_{<=p-2} . grad] v_p, evaluated exactly as the difference of the
/// two orderings, products dealiased.  Requires |p - q| <= 2.
Field transport_commutator(const Field& u, const Field& v, int q, int p);

/// [Delta_q, b_{<=p-2} x curl] h_p, same contract; b must be divergence-free.
Field hall_commutator(const Field& b, const Field& h, int q, int p);

/// ||f_block||_r / (lambda_q^{n(1/r - 1/s)} ||f_block||_s) for a single dyadic
/// block, s >= r >= 1.  Returns nullopt for a zero block (undefined ratio).
std::optional<Real> bernstein_check(const Field& f_block, int q, Real r, Real s);

}  // namespace tmhd
