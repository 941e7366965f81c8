#pragma once

#include <string>
#include <vector>

#include "tmhd/dynamics.hpp"
#include "tmhd/wavenumbers.hpp"

namespace tmhd {

/// One row of the validate table: a measured quantity against its bound.
struct CheckResult {
  std::string name;
  Real value = 0.0;      ///< measured (max deviation / max ratio / ...)
  Real threshold = 0.0;  ///< pass iff value <= threshold
  bool pass = false;
};

CheckResult make_check(const std::string& name, Real value, Real threshold);

/// max over retained k of |sum_q phi_q(k) - 1|  (q = -1..q_max).
CheckResult check_partition_of_unity(const TorusGrid& g, Real tol = 1e-12);

/// max relative L^2 error of sum_q Delta_q f - f over seeded band-limited fields.
CheckResult check_reconstruction(const TorusGrid& g, int n_fields, Real tol = 1e-12);

/// max relative L^2 error of (low_high + high_low + resonant) - dealias(uv).
CheckResult check_bony_identity(const TorusGrid& g, int n_fields, Real tol = 1e-10);

/// Orthogonal-projector and vector-calculus identities on seeded fields:
/// div curl = 0, curl grad = 0, curl curl + Lap = grad div, <Pf, f - Pf> ~ 0.
std::vector<CheckResult> check_spectral_identities(const TorusGrid& g, int n_fields);

/// Transport/Hall commutator corpus: max over seeded samples of
///   ||[Delta_q, u_{<=p-2}.grad] v_p||_2 /
///       (||v_p||_{2r/(r-2)} sum_{p'<=p-2} lambda_p' 2pi ||u_p'||_r)
/// and the Hall analogue.  `bound` is the recorded corpus constant.
struct CommutatorCorpusResult {
  CheckResult transport;
  CheckResult hall;
};
CommutatorCorpusResult check_commutator_corpus(const TorusGrid& g, int n_samples, Real r,
                                               Real transport_bound, Real hall_bound);

/// Bernstein corpus: max ratio ||u_q||_r / (lambda_q^{n(1/r-1/s)} ||u_q||_s)
/// over seeded blocks; `bound` is the recorded constant.
CheckResult check_bernstein_corpus(const TorusGrid& g, int n_samples, Real r, Real s,
                                   Real bound);

/// Energy neutrality of the EMHD nonlinearity and the combined Hall-MHD
/// cancellation on seeded fields, relative to the natural scales.
std::vector<CheckResult> check_energy_neutrality(const TorusGrid& g, int n_fields,
                                                 Real tol = 1e-10);

/// Run every suite the `validate` subcommand covers at its reference sizes.
std::vector<CheckResult> run_validation_suite();

}  // namespace tmhd
