#pragma once

#include <vector>

#include "reulab/field.hpp"
#include "reulab/grid.hpp"

namespace reulab {

// Forward transform of real collocation values to Fourier-series coefficients.
// Normalization: forward divides by n^3, so a unit single mode has a
// unit-magnitude coefficient. Nyquist rows are zeroed on input.
// Throws on a size mismatch between `values` and the grid.
SpectralScalarField to_spectral(const Grid& grid, const std::vector<double>& values);

// Inverse transform back to real collocation values (real part; the imaginary
// residue of a Hermitian-symmetric field is at rounding level).
std::vector<double> to_physical(const SpectralScalarField& f);

// Component-wise transforms for vector fields.
SpectralVectorField to_spectral(const Grid& grid, const std::array<std::vector<double>, 3>& values);
std::array<std::vector<double>, 3> to_physical(const SpectralVectorField& v);

namespace detail {
// Unnormalized in-place c2c transforms used by the wrappers above.
// sign = -1 forward (e^{-i k x}), +1 backward.
void fft3_inplace(int n, Complex* data, int sign);
}  // namespace detail

}  // namespace reulab
