#include "tmhd/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace tmhd {
namespace {

constexpr char kMagic[8] = {'T', 'M', 'H', 'D', 'S', 'N', 'P', '1'};
constexpr std::size_t kNameBytes = 16;

// Fixed-width little-endian writers.  The build targets little-endian hosts;
// the format is defined as little-endian either way.
template <typename T>
void put(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("snapshot: truncated header");
  return v;
}

}  // namespace

void save_snapshot(const Field& f, Real time, const std::string& field_name,
                   bool divergence_free, const std::string& path) {
  if (field_name.size() >= kNameBytes)
    throw IoError("snapshot: field name longer than 15 bytes");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("snapshot: cannot open for writing: " + path);

  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.n));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.N));
  put<std::uint32_t>(os, 3);
  put<Real>(os, f.grid.period);
  put<Real>(os, time);
  char name[kNameBytes] = {};
  std::memcpy(name, field_name.data(), field_name.size());
  os.write(name, kNameBytes);
  put<std::uint8_t>(os, divergence_free ? 1 : 0);
  const char pad[7] = {};
  os.write(pad, sizeof(pad));

  const GridSamples s = to_physical(f);
  const std::int64_t npts = f.grid.size();
  std::vector<Real> row(3);
  for (std::int64_t i = 0; i < npts; ++i) {
    row[0] = s.v[0][i];
    row[1] = s.v[1][i];
    row[2] = s.v[2][i];
    os.write(reinterpret_cast<const char*>(row.data()), 3 * sizeof(Real));
  }
  if (!os) throw IoError("snapshot: write failure: " + path);
}

LoadedSnapshot load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("snapshot: cannot open: " + path);

  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw IoError("snapshot: bad magic (not a snapshot file): " + path);

  LoadedSnapshot out;
  out.header.version = get<std::uint32_t>(is);
  if (out.header.version != 1)
    throw IoError("snapshot: unsupported format version " +
                  std::to_string(out.header.version));
  out.header.n = static_cast<int>(get<std::uint32_t>(is));
  out.header.N = static_cast<int>(get<std::uint32_t>(is));
  out.header.m = static_cast<int>(get<std::uint32_t>(is));
  if (out.header.m != 3) throw IoError("snapshot: component count must be 3");
  out.header.period = get<Real>(is);
  out.header.time = get<Real>(is);
  char name[kNameBytes];
  is.read(name, kNameBytes);
  if (!is) throw IoError("snapshot: truncated header");
  out.header.field_name.assign(name, strnlen(name, kNameBytes));
  out.header.divergence_free = get<std::uint8_t>(is) != 0;
  char pad[7];
  is.read(pad, sizeof(pad));
  if (!is) throw IoError("snapshot: truncated header");

  TorusGrid g;
  g.n = out.header.n;
  g.N = out.header.N;
  g.period = out.header.period;
  try {
    g.validate();
  } catch (const ParameterError& e) {
    throw IoError(std::string("snapshot: invalid grid in header: ") + e.what());
  }

  GridSamples s(g);
  const std::int64_t npts = g.size();
  std::vector<Real> row(3);
  for (std::int64_t i = 0; i < npts; ++i) {
    is.read(reinterpret_cast<char*>(row.data()), 3 * sizeof(Real));
    if (!is) throw IoError("snapshot: truncated payload: " + path);
    s.v[0][i] = row[0];
    s.v[1][i] = row[1];
    s.v[2][i] = row[2];
  }
  // Reject trailing garbage so truncation/concatenation bugs surface loudly.
  char extra;
  if (is.read(&extra, 1)) throw IoError("snapshot: trailing bytes after payload: " + path);

  out.field = from_physical(s);
  out.samples = std::move(s);
  if (out.header.divergence_free && !is_divergence_free(out.field, 1e-12))
    throw IoError("snapshot: divergence-free flag set but payload is not solenoidal");
  return out;
}

}  // namespace tmhd
