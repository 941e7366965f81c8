#include "tmhd/transform.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace tmhd {
namespace {

// One FFT engine per thread; it caches kiss-fft plans per length internally.
// The Unscaled flag makes inv() the plain e^{+} sum; normalization is the
// caller's business.
Eigen::FFT<Real>& engine() {
  thread_local Eigen::FFT<Real> fft = [] {
    Eigen::FFT<Real> f;
    f.SetFlag(Eigen::FFT<Real>::Unscaled);
    return f;
  }();
  return fft;
}

enum class Direction { Forward, Inverse };

// Transform the axis with the given stride in a row-major array.  The array
// decomposes as idx = outer*(len*stride) + j*stride + inner with
// inner in [0, stride), so a line is addressed by (outer, inner).
void transform_axis(ArrayXc& a, int line_len, std::int64_t stride, Direction dir) {
  const std::int64_t n_lines = a.size() / line_len;
  std::vector<Complex> in(line_len), out(line_len);
  auto& fft = engine();
  for (std::int64_t line = 0; line < n_lines; ++line) {
    const std::int64_t inner = line % stride;
    const std::int64_t outer = line / stride;
    const std::int64_t base = outer * stride * line_len + inner;
    for (int j = 0; j < line_len; ++j) in[j] = a[base + j * stride];
    if (dir == Direction::Forward)
      fft.fwd(out.data(), in.data(), line_len);
    else
      fft.inv(out.data(), in.data(), line_len);
    for (int j = 0; j < line_len; ++j) a[base + j * stride] = out[j];
  }
}

void transform_all_axes(const TorusGrid& g, ArrayXc& a, Direction dir) {
  const int N = g.N;
  if (a.size() != g.size()) throw ParameterError("transform: array/grid shape mismatch");
  if (g.n == 2) {
    transform_axis(a, N, N, dir);
    transform_axis(a, N, 1, dir);
  } else {
    transform_axis(a, N, static_cast<std::int64_t>(N) * N, dir);
    transform_axis(a, N, N, dir);
    transform_axis(a, N, 1, dir);
  }
}

}  // namespace

void dft_forward_inplace(const TorusGrid& g, ArrayXc& a) {
  transform_all_axes(g, a, Direction::Forward);
}

void dft_inverse_inplace(const TorusGrid& g, ArrayXc& a) {
  transform_all_axes(g, a, Direction::Inverse);
}

}  // namespace tmhd
