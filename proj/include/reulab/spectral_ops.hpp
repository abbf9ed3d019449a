#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "reulab/field.hpp"
#include "reulab/fft.hpp"

namespace reulab {

enum class Lp { one, two, inf };

std::string lp_name(Lp p);

// Pointwise Fourier multiplier c(k) -> m(xi_k) * c(k). The symbol is evaluated
// at every grid frequency including xi = 0; degree-0 homogeneous symbols must
// supply their value there (convention: 0). Non-finite symbol values are
// reported with the offending frequency.
template <class Symbol>
SpectralScalarField apply_multiplier(const SpectralScalarField& f, Symbol&& m) {
  const Grid& g = f.grid();
  SpectralScalarField out(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.xi(j);
      for (int k = 0; k < n; ++k) {
        const double xi3 = g.xi(k);
        const Complex mv = m(xi1, xi2, xi3);
        if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag())) {
          throw std::invalid_argument("apply_multiplier: non-finite symbol at xi=(" +
                                      std::to_string(xi1) + "," + std::to_string(xi2) + "," +
                                      std::to_string(xi3) + ")");
        }
        out.at(i, j, k) = mv * f.at(i, j, k);
      }
    }
  }
  return out;
}

// Spectral derivatives (multipliers i*xi_j); exact for band-limited fields.
SpectralScalarField partial(const SpectralScalarField& f, int axis);
SpectralVectorField gradient(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& v);
SpectralVectorField curl(const SpectralVectorField& v);
SpectralScalarField laplacian(const SpectralScalarField& f);

// 2/3-rule dealiasing: zeroes every coefficient with any |k_axis| > n/3.
SpectralScalarField dealias(const SpectralScalarField& f);
SpectralVectorField dealias(const SpectralVectorField& v);

// L^p norms on [0,L)^3. p=2 is computed spectrally via Parseval; p=1 by grid
// quadrature with cell volume (L/n)^3; p=inf as the grid max.
double lp_norm(const SpectralScalarField& f, Lp p);
// Vector version: L^p norm of the pointwise Euclidean magnitude.
double lp_norm(const SpectralVectorField& v, Lp p);

// sqrt(L^3 sum |c(k)|^2), directly from coefficients.
double l2_norm(const SpectralScalarField& f);
double l2_norm(const SpectralVectorField& v);

// max_k |xi . v_hat(k)|; zero for divergence-free fields.
double divergence_defect(const SpectralVectorField& v);
// Relative defect against max |v_hat|; 0 for the zero field.
double relative_divergence_defect(const SpectralVectorField& v);

void zero_mean(SpectralScalarField& f);
void zero_mean(SpectralVectorField& v);

// Restricts coefficients to the Hermitian-symmetric part; used by generators.
void symmetrize_hermitian(SpectralScalarField& f);

// Pull-back by x -> -x, i.e. coefficients c(k) -> c(-k).
SpectralScalarField reflect(const SpectralScalarField& f);
SpectralVectorField reflect(const SpectralVectorField& v);

// Pseudo-spectral pointwise product (physical multiply, transform back,
// optional 2/3-rule truncation).
SpectralScalarField pointwise_product(const SpectralScalarField& a, const SpectralScalarField& b,
                                      bool apply_dealias = true);

// v . grad f, computed pseudo-spectrally.
SpectralScalarField advect(const SpectralVectorField& v, const SpectralScalarField& f,
                           bool apply_dealias = true);
SpectralVectorField advect(const SpectralVectorField& v, const SpectralVectorField& f,
                           bool apply_dealias = true);

}  // namespace reulab
