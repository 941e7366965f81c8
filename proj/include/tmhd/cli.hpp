#pragma once

#include <string>
#include <vector>

#include "tmhd/config.hpp"

namespace tmhd {

/// Whistler linear test: evolve a small circularly polarized perturbation of
/// a uniform in-plane background with mu = 0 and compare the measured
/// rotation frequency of the perturbed mode against the dispersion relation
///   omega = d_i (2pi)^2 B0 (k . e_B) |k|
/// obtained by linearizing the induction equation about the background.
struct DispersionResult {
  Real omega_measured = 0.0;
  Real omega_predicted = 0.0;
  Real rel_error = 0.0;
  std::vector<Real> t;
  std::vector<Real> phase;  ///< unwrapped rotation phase of the mode
};

struct DispersionParams {
  int N = 64;
  Real B0 = 1.0;
  int kx = 8;
  int ky = 0;
  Real amplitude = 1e-4;
  Real periods = 4.0;
  Real c_cfl = 0.3;
  Real d_i = 1.0;
};

DispersionResult run_dispersion_experiment(const DispersionParams& dp);

/// Exit codes: 0 success, 2 configuration error, 3 blow-up.
/// Subcommands: simulate, analyze, sync, validate, dispersion.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace tmhd
