#pragma once

#include "nsda/spectral_field.hpp"

#include <filesystem>
#include <iosfwd>

namespace nsda {

// NSF2 snapshot layout (all little-endian):
//   "NSF2" | u32 version = 1 | f64 L | f64 time | u32 M |
//   2*M*M complex coefficients as (f64 re, f64 im),
// component-major, then k1 index 0..M-1, then k2 index 0..M-1 (FFT order).
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  double time = 0.0;
  SpectralVelocity field;
};

void write_snapshot(std::ostream& os, const SpectralVelocity& field, double time);
void write_snapshot(const std::filesystem::path& path, const SpectralVelocity& field, double time);

// Throws ConfigError on a bad magic, version, truncated payload or invalid grid.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace nsda
