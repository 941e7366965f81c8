#pragma once

#include <string>
#include <vector>

#include "tmhd/dynamics.hpp"
#include "tmhd/sync_lab.hpp"
#include "tmhd/wavenumbers.hpp"

namespace tmhd {

/// Thrown on malformed or out-of-range configuration; the CLI maps it to
/// exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolved run configuration: one JSON document, fully validated before any
/// compute.  Key names are documented in the README.
struct Config {
  TorusGrid grid;
  PhysicsParams physics;
  WavenumberParams wavenumber;

  struct Run {
    Real dt_max = 1e-3;
    Real c_cfl = 0.3;
    Real t_end = 0.0;
    Real snapshot_cadence = 0.0;
    std::uint64_t seed = 1;
    int init_q_lo = 0;
    int init_q_hi = 2;
    Real init_energy = 1.0;
  } run;

  SyncConfig sync;
  SyncRunParams sync_run() const;

  AveragingWindow averaging;

  System system = System::EMHD;

  /// Re-validates every cross-field constraint owned by the modules.
  /// `for_sync` additionally checks the admissible interval for s;
  /// `for_dissipation` the averaging-report exponent ranges.
  void validate(bool for_sync = false, bool for_dissipation = false) const;

  /// The resolved document (for metadata sidecars), schema-stable.
  std::string to_json_string() const;
};

/// Parse a config file, apply `key.path=value` overrides, validate nothing
/// beyond shape (callers pick the validation profile).
Config load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Parse from a JSON document string (used by tests).
Config parse_config(const std::string& json_text,
                    const std::vector<std::string>& overrides = {});

}  // namespace tmhd
