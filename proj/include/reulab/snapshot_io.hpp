#pragma once

#include <string>

#include "reulab/field.hpp"

namespace reulab {

// Binary snapshot format, shared repo-wide:
//   magic "REULAB01" | u32 n | f64 L | f64 time | u8 component-count
//   body: complex f64 coefficients, component-major, k-index row-major,
//   little-endian.
struct Snapshot {
  SpectralVectorField field;
  double time = 0.0;
};

void write_snapshot(const std::string& path, const SpectralVectorField& v, double time);
Snapshot read_snapshot(const std::string& path);

}  // namespace reulab
