#include "reulab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reulab {

SpectralScalarField::SpectralScalarField(const Grid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw std::invalid_argument("SpectralScalarField: coefficient count does not match grid");
  }
}

double SpectralScalarField::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralScalarField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ic = grid_.conj_index(i);
    for (int j = 0; j < n; ++j) {
      const int jc = grid_.conj_index(j);
      for (int k = 0; k < n; ++k) {
        const int kc = grid_.conj_index(k);
        const Complex d = coeffs_[grid_.index(ic, jc, kc)] - std::conj(coeffs_[grid_.index(i, j, k)]);
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  return worst;
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& other) {
  if (grid_ != other.grid_) throw std::invalid_argument("field +=: grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& other) {
  if (grid_ != other.grid_) throw std::invalid_argument("field -=: grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double a) {
  for (Complex& c : coeffs_) c *= a;
  return *this;
}

SpectralVectorField::SpectralVectorField(SpectralScalarField c0, SpectralScalarField c1,
                                         SpectralScalarField c2)
    : components_{std::move(c0), std::move(c1), std::move(c2)} {
  if (components_[0].grid() != components_[1].grid() ||
      components_[0].grid() != components_[2].grid()) {
    throw std::invalid_argument("SpectralVectorField: components on different grids");
  }
}

double SpectralVectorField::max_abs_coeff() const {
  return std::max({components_[0].max_abs_coeff(), components_[1].max_abs_coeff(),
                   components_[2].max_abs_coeff()});
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& other) {
  for (int c = 0; c < 3; ++c) components_[static_cast<std::size_t>(c)] += other[c];
  return *this;
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& other) {
  for (int c = 0; c < 3; ++c) components_[static_cast<std::size_t>(c)] -= other[c];
  return *this;
}

SpectralVectorField& SpectralVectorField::operator*=(double a) {
  for (auto& c : components_) c *= a;
  return *this;
}

}  // namespace reulab
