#pragma once

#include <array>
#include <complex>
#include <vector>

#include "reulab/grid.hpp"

namespace reulab {

using Complex = std::complex<double>;

// Scalar field stored as Fourier-series coefficients on a Grid, row-major
// in (i,j,k). Coefficients of a real field satisfy c(-k) = conj(c(k)).
class SpectralScalarField {
 public:
  explicit SpectralScalarField(const Grid& grid)
      : grid_(grid), coeffs_(grid.size(), Complex{0.0, 0.0}) {}
  SpectralScalarField(const Grid& grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }

  Complex& at(int i, int j, int k) { return coeffs_[grid_.index(i, j, k)]; }
  const Complex& at(int i, int j, int k) const { return coeffs_[grid_.index(i, j, k)]; }

  // Largest |coefficient|.
  double max_abs_coeff() const;

  // Max over grid of |c(-k) - conj(c(k))|, for symmetry checks.
  double hermitian_defect() const;

  SpectralScalarField& operator+=(const SpectralScalarField& other);
  SpectralScalarField& operator-=(const SpectralScalarField& other);
  SpectralScalarField& operator*=(double a);

  friend SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) {
    a += b;
    return a;
  }
  friend SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) {
    a -= b;
    return a;
  }
  friend SpectralScalarField operator*(double a, SpectralScalarField f) {
    f *= a;
    return f;
  }

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

// Three scalar components sharing one grid.
class SpectralVectorField {
 public:
  explicit SpectralVectorField(const Grid& grid)
      : components_{SpectralScalarField(grid), SpectralScalarField(grid),
                    SpectralScalarField(grid)} {}
  SpectralVectorField(SpectralScalarField c0, SpectralScalarField c1, SpectralScalarField c2);

  const Grid& grid() const { return components_[0].grid(); }
  SpectralScalarField& operator[](int c) { return components_[static_cast<std::size_t>(c)]; }
  const SpectralScalarField& operator[](int c) const {
    return components_[static_cast<std::size_t>(c)];
  }

  double max_abs_coeff() const;

  SpectralVectorField& operator+=(const SpectralVectorField& other);
  SpectralVectorField& operator-=(const SpectralVectorField& other);
  SpectralVectorField& operator*=(double a);

  friend SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
    a += b;
    return a;
  }
  friend SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
    a -= b;
    return a;
  }
  friend SpectralVectorField operator*(double a, SpectralVectorField v) {
    v *= a;
    return v;
  }

 private:
  std::array<SpectralScalarField, 3> components_;
};

}  // namespace reulab
