#pragma once

#include "tmhd/common.hpp"
#include "tmhd/grid.hpp"

namespace tmhd {

/// Unnormalized forward DFT along every axis:  a(k) <- sum_j a(j) e^{-i2pi jk/N}.
void dft_forward_inplace(const TorusGrid& g, ArrayXc& a);

/// Unnormalized inverse DFT along every axis:  a(j) <- sum_k a(k) e^{+i2pi jk/N}.
void dft_inverse_inplace(const TorusGrid& g, ArrayXc& a);

}  // namespace tmhd
