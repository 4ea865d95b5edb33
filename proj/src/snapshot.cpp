#include "nsda/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace nsda {

namespace {

constexpr std::array<char, 4> kMagic = {'N', 'S', 'F', '2'};

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  os.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), bytes.size())) throw ConfigError("snapshot truncated");
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralVelocity& field, double time) {
  const int m = field.points();
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kSnapshotVersion);
  put_le<double>(os, field.grid().length());
  put_le<double>(os, time);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(m));
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        put_le<double>(os, field[c](i, j).real());
        put_le<double>(os, field[c](i, j).imag());
      }
    }
  }
  if (!os) throw ConfigError("failed writing snapshot");
}

void write_snapshot(const std::filesystem::path& path, const SpectralVelocity& field, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open snapshot for writing: " + path.string());
  write_snapshot(os, field, time);
}

Snapshot read_snapshot(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ConfigError("not an NSF2 snapshot (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(is);
  if (version != kSnapshotVersion) {
    throw ConfigError("unsupported NSF2 version " + std::to_string(version));
  }
  const double length = get_le<double>(is);
  const double time = get_le<double>(is);
  const auto m = static_cast<int>(get_le<std::uint32_t>(is));
  Snapshot snap;
  snap.time = time;
  snap.field = SpectralVelocity(share(make_grid(length, m)));
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double re = get_le<double>(is);
        const double im = get_le<double>(is);
        snap.field[c](i, j) = {re, im};
      }
    }
  }
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open snapshot: " + path.string());
  return read_snapshot(is);
}

}  // namespace nsda
