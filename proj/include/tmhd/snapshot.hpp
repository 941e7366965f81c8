#pragma once

#include <string>

#include "tmhd/field.hpp"

namespace tmhd {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary snapshot: fixed header (format version, n, N, m = 3, period, time,
/// field name, divergence-free flag) followed by the physical-space samples
/// as 8-byte little-endian doubles, row-major with the three components
/// interleaved per point.  save-then-load reproduces samples bit-exactly;
/// coefficients are recomputed on load.
struct SnapshotHeader {
  std::uint32_t version = 1;
  int n = 2;
  int N = 0;
  int m = 3;
  Real period = 1.0;
  Real time = 0.0;
  std::string field_name;  ///< at most 15 bytes
  bool divergence_free = false;
};

void save_snapshot(const Field& f, Real time, const std::string& field_name,
                   bool divergence_free, const std::string& path);

struct LoadedSnapshot {
  SnapshotHeader header;
  GridSamples samples;  ///< the payload, verbatim
  Field field;          ///< coefficients recomputed from the samples
};

/// Throws IoError on missing/truncated/corrupt files, version mismatch, or a
/// divergence-free flag contradicted by the payload.
LoadedSnapshot load_snapshot(const std::string& path);

}  // namespace tmhd
