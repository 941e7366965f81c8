#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tmhd {

using Real = double;
using Complex = std::complex<double>;
using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kTwoPi = 2.0 * kPi;

/// Dyadic scale lambda_q = 2^q, with the convention lambda_{-1} := 1
/// used in all dyadic sums.
inline Real lambda_q(int q) { return q < 0 ? 1.0 : std::ldexp(1.0, q); }

/// Thrown when a parameter or configuration violates a documented precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a time integration detects NaN/overflow; carries no state,
/// the caller keeps the last valid snapshot.
class BlowupError : public std::runtime_error {
 public:
  explicit BlowupError(double t)
      : std::runtime_error("field blow-up detected at t=" + std::to_string(t)), t_blowup(t) {}
  double t_blowup;
};

}  // namespace tmhd
