#include "tmhd/field.hpp"

#include <algorithm>

#include "tmhd/transform.hpp"

namespace tmhd {

Field& Field::operator+=(const Field& o) {
  if (!(grid == o.grid)) throw ParameterError("Field: grid mismatch");
  for (int m = 0; m < 3; ++m) c[m] += o.c[m];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  if (!(grid == o.grid)) throw ParameterError("Field: grid mismatch");
  for (int m = 0; m < 3; ++m) c[m] -= o.c[m];
  return *this;
}

Field& Field::operator*=(Real a) {
  for (int m = 0; m < 3; ++m) c[m] *= a;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Real a, Field f) { return f *= a; }

GridSamples to_physical(const Field& f) {
  GridSamples s(f.grid);
  ArrayXc work;
  for (int m = 0; m < 3; ++m) {
    work = f.c[m];
    dft_inverse_inplace(f.grid, work);
    s.v[m] = work.real();
  }
  return s;
}

Field from_physical(const GridSamples& s) {
  Field f(s.grid);
  const Real scale = 1.0 / static_cast<Real>(s.grid.size());
  ArrayXc work;
  for (int m = 0; m < 3; ++m) {
    if (s.v[m].size() != s.grid.size())
      throw ParameterError("from_physical: sample/grid shape mismatch");
    work = s.v[m].cast<Complex>();
    dft_forward_inplace(s.grid, work);
    f.c[m] = work * scale;
  }
  return f;
}

Field curl(const Field& f) {
  Field out(f.grid);
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Complex ik0(0.0, kTwoPi * k[0]);
    const Complex ik1(0.0, kTwoPi * k[1]);
    const Complex ik2(0.0, kTwoPi * k[2]);
    const Complex f0 = f.c[0][idx], f1 = f.c[1][idx], f2 = f.c[2][idx];
    out.c[0][idx] = ik1 * f2 - ik2 * f1;
    out.c[1][idx] = ik2 * f0 - ik0 * f2;
    out.c[2][idx] = ik0 * f1 - ik1 * f0;
  });
  return out;
}

ArrayXc divergence(const Field& f) {
  ArrayXc out = ArrayXc::Zero(f.grid.size());
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    Complex acc(0.0, 0.0);
    for (int d = 0; d < 3; ++d) acc += Complex(0.0, kTwoPi * k[d]) * f.c[d][idx];
    out[idx] = acc;
  });
  return out;
}

Field laplacian(const Field& f) {
  Field out(f.grid);
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real k2 = static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                    static_cast<Real>(k[2]) * k[2];
    const Real sym = -kTwoPi * kTwoPi * k2;
    for (int m = 0; m < 3; ++m) out.c[m][idx] = sym * f.c[m][idx];
  });
  return out;
}

Field gradient_of_scalar(const TorusGrid& g, const ArrayXc& a) {
  if (a.size() != g.size()) throw ParameterError("gradient_of_scalar: shape mismatch");
  Field out(g);
  for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
    for (int d = 0; d < 3; ++d)
      out.c[d][idx] = Complex(0.0, kTwoPi * k[d]) * a[idx];
  });
  return out;
}

Field leray_project(const Field& f) {
  Field out = f;
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    const Real k2 = static_cast<Real>(k[0]) * k[0] + static_cast<Real>(k[1]) * k[1] +
                    static_cast<Real>(k[2]) * k[2];
    if (k2 == 0.0) return;  // mean mode passes through
    Complex kdotf(0.0, 0.0);
    for (int d = 0; d < 3; ++d) kdotf += static_cast<Real>(k[d]) * f.c[d][idx];
    const Complex s = kdotf / k2;
    for (int d = 0; d < 3; ++d) out.c[d][idx] -= static_cast<Real>(k[d]) * s;
  });
  return out;
}

void dealias_inplace(Field& f) {
  for_each_mode(f.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
    if (f.grid.mode_is_dealiased(k))
      for (int m = 0; m < 3; ++m) f.c[m][idx] = Complex(0.0, 0.0);
  });
}

void hermitian_symmetrize_inplace(Field& f) {
  const TorusGrid& g = f.grid;
  const int N = g.N;
  for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
    // Pair each mode with its reflection -k (mod N); visit each pair once.
    std::array<int, 3> nk{(-k[0] + N) % N, (-k[1] + N) % N, 0};
    std::int64_t ridx;
    if (g.n == 2) {
      ridx = static_cast<std::int64_t>(nk[0]) * N + nk[1];
    } else {
      nk[2] = (-k[2] + N) % N;
      ridx = (static_cast<std::int64_t>(nk[0]) * N + nk[1]) * N + nk[2];
    }
    if (ridx < idx) return;
    for (int m = 0; m < 3; ++m) {
      const Complex a = f.c[m][idx], b = f.c[m][ridx];
      const Complex half = 0.5 * (a + std::conj(b));
      f.c[m][idx] = half;
      f.c[m][ridx] = std::conj(half);
    }
  });
}

Real l2_norm(const Field& f) {
  Real acc = 0.0;
  for (int m = 0; m < 3; ++m) acc += f.c[m].abs2().sum();
  return std::sqrt(acc);
}

Real inner_product(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw ParameterError("inner_product: grid mismatch");
  Real acc = 0.0;
  for (int m = 0; m < 3; ++m) acc += (f.c[m] * g.c[m].conjugate()).real().sum();
  return acc;
}

Real lp_norm(const Field& f, Real p) {
  if (!(p >= 1.0)) throw ParameterError("lp_norm: p must lie in [1, inf]");
  if (p == 2.0) return l2_norm(f);
  const GridSamples s = to_physical(f);
  ArrayXr mag2 = s.v[0].square() + s.v[1].square() + s.v[2].square();
  if (std::isinf(p)) return std::sqrt(mag2.maxCoeff());
  const Real mean = mag2.pow(p / 2.0).mean();
  return std::pow(mean, 1.0 / p);
}

Real grad_sup_norm(const Field& f) {
  const TorusGrid& g = f.grid;
  ArrayXr frob2 = ArrayXr::Zero(g.size());
  ArrayXc work(g.size());
  for (int m = 0; m < 3; ++m) {
    for (int d = 0; d < g.n; ++d) {
      for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        work[idx] = Complex(0.0, kTwoPi * k[d]) * f.c[m][idx];
      });
      dft_inverse_inplace(g, work);
      frob2 += work.real().square();
    }
  }
  return std::sqrt(frob2.maxCoeff());
}

Real max_coefficient_magnitude(const Field& f) {
  Real m = 0.0;
  for (int c = 0; c < 3; ++c) m = std::max(m, f.c[c].abs().maxCoeff());
  return m;
}

Real divergence_linf_coeff(const Field& f) {
  return divergence(f).abs().maxCoeff();
}

bool is_divergence_free(const Field& f, Real tol) {
  const Real scale = max_coefficient_magnitude(f);
  if (scale == 0.0) return true;
  return divergence_linf_coeff(f) <= tol * scale;
}

}  // namespace tmhd
