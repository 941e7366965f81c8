#include "tmhd/random_field.hpp"

namespace tmhd {
namespace {

// splitmix64: small, well-mixed, and stable across platforms.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1]; never returns 0 so log() below is safe.
Real hash_uniform(std::uint64_t h) {
  return (static_cast<Real>(h >> 11) + 1.0) * 0x1.0p-53;
}

// Two independent standard normals from one (seed, k, lane) counter.
std::array<Real, 2> hash_normal_pair(std::uint64_t seed, const std::array<int, 3>& k,
                                     int lane) {
  std::uint64_t h = seed;
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k[0]))));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k[1])) << 1));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k[2])) << 2));
  h = splitmix64(h ^ static_cast<std::uint64_t>(lane));
  const Real u1 = hash_uniform(h);
  const Real u2 = hash_uniform(splitmix64(h));
  const Real r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace

Field random_divfree_field(const TorusGrid& g, std::uint64_t seed, int q_lo, int q_hi,
                           Real amplitude) {
  g.validate();
  if (q_lo > q_hi) throw ParameterError("random_divfree_field: empty band");
  if (q_lo < -1) throw ParameterError("random_divfree_field: q_lo must be >= -1");
  if (q_hi > g.block_q_max())
    throw ParameterError("random_divfree_field: band exceeds resolved blocks");

  const Real lo = q_lo <= -1 ? 0.0 : lambda_q(q_lo);
  const Real hi = 0.75 * lambda_q(q_hi + 1);

  Field f(g);
  std::int64_t n_modes = 0;
  for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
    if (g.mode_is_dealiased(k)) return;
    const Real kmag = std::sqrt(static_cast<Real>(k[0]) * k[0] +
                                static_cast<Real>(k[1]) * k[1] +
                                static_cast<Real>(k[2]) * k[2]);
    if (kmag < lo || kmag > hi) return;
    // Canonical half-space: draw at k, mirror the conjugate to -k later.
    // Self-conjugate modes (k == -k mod N) only occur at the Nyquist planes,
    // which the dealias window excludes, and at k = 0.
    const bool canonical =
        (k[0] > 0) || (k[0] == 0 && k[1] > 0) || (k[0] == 0 && k[1] == 0 && k[2] > 0);
    if (!canonical && kmag > 0.0) return;

    std::array<Complex, 3> w;
    for (int m = 0; m < 3; ++m) {
      const auto znm = hash_normal_pair(seed, k, m);
      w[m] = kmag == 0.0 ? Complex(znm[0], 0.0) : Complex(znm[0], znm[1]);
    }
    // Leray symbol: remove the component along k.
    if (kmag > 0.0) {
      Complex kdotw(0.0, 0.0);
      for (int d = 0; d < 3; ++d) kdotw += static_cast<Real>(k[d]) * w[d];
      const Complex s = kdotw / (kmag * kmag);
      for (int d = 0; d < 3; ++d) w[d] -= static_cast<Real>(k[d]) * s;
    }
    for (int m = 0; m < 3; ++m) f.c[m][idx] = w[m];
    ++n_modes;
  });
  if (n_modes == 0) throw ParameterError("random_divfree_field: band selects no modes");

  hermitian_symmetrize_inplace(f);
  // hermitian_symmetrize averages c(k) with conj(c(-k)) = 0, halving the
  // canonical coefficients; the final rescale absorbs that.
  const Real norm = l2_norm(f);
  if (amplitude == 0.0 || norm == 0.0) {
    for (auto& comp : f.c) comp.setZero();
    return f;
  }
  f *= amplitude / norm;
  return f;
}

}  // namespace tmhd
