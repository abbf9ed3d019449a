#pragma once

#include <array>
#include <cstdint>

#include "reulab/field.hpp"
#include "reulab/littlewood_paley.hpp"

namespace reulab {

// Taylor-Green vortex A (sin x cos y cos z, -cos x sin y cos z, 0) with the
// coordinates scaled to the box; divergence-free and mean-zero by
// construction.
SpectralVectorField taylor_green(const Grid& grid, double amplitude = 1.0);

// Single helical (curl-eigen) mode at integer wavevector kvec with helicity
// sign +1 or -1; curl u = sign * |xi| * u. L^2-normalized to `amplitude`.
SpectralVectorField beltrami_mode(const Grid& grid, const std::array<int, 3>& kvec,
                                  double amplitude = 1.0, int sign = +1);

// Random divergence-free field with energy spectrum E(k) ~ k^4 exp(-2k^2/k0^2),
// band-limited to the dealias-safe range, rescaled to L^2 norm `amplitude`.
SpectralVectorField random_solenoidal(const Grid& grid, double k0, double amplitude,
                                      std::uint64_t seed);

// Random Hermitian-symmetric scalar with flat spectrum supported on integer
// radii in [kmin, kmax]; mean-zero. Used by test ensembles and verifiers.
SpectralScalarField random_scalar_band(const Grid& grid, int kmin, int kmax, std::uint64_t seed);

// Vector variant, Leray-projected so the result is divergence-free.
SpectralVectorField random_solenoidal_band(const Grid& grid, int kmin, int kmax,
                                           std::uint64_t seed);

// Smooth phase-coherent divergence-free profile on dyadic shell j:
// u_hat(xi) = i phi_j(|xi|) (xi_hat x e3). All modes interfere
// constructively at t = 0, which is what makes dispersive sup-norm decay
// visible; random-phase data starts at the incoherent level already.
SpectralVectorField coherent_shell_field(const Grid& grid, const DyadicPartition& part, int j,
                                         double amplitude = 1.0);

}  // namespace reulab
