#include "reulab/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace reulab {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts are unsupported");

namespace {
constexpr char kMagic[8] = {'R', 'E', 'U', 'L', 'A', 'B', '0', '1'};

template <class T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("snapshot: truncated file");
  return v;
}
}  // namespace

void write_snapshot(const std::string& path, const SpectralVectorField& v, double time) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, static_cast<std::uint32_t>(v.grid().n()));
  write_pod(out, v.grid().box_size());
  write_pod(out, time);
  write_pod(out, static_cast<std::uint8_t>(3));
  for (int c = 0; c < 3; ++c) {
    const auto& coeffs = v[c].coeffs();
    out.write(reinterpret_cast<const char*>(coeffs.data()),
              static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
  }
  if (!out) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("snapshot: bad magic in " + path);
  }
  const auto n = read_pod<std::uint32_t>(in);
  const auto box = read_pod<double>(in);
  const auto time = read_pod<double>(in);
  const auto ncomp = read_pod<std::uint8_t>(in);
  if (ncomp != 3) {
    throw std::runtime_error("snapshot: expected 3 components, got " + std::to_string(ncomp));
  }
  Grid grid(static_cast<int>(n), box);
  SpectralVectorField v(grid);
  for (int c = 0; c < 3; ++c) {
    auto& coeffs = v[c].coeffs();
    in.read(reinterpret_cast<char*>(coeffs.data()),
            static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
    if (!in) throw std::runtime_error("snapshot: truncated body in " + path);
  }
  return Snapshot{std::move(v), time};
}

}  // namespace reulab
