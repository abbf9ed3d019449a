#pragma once

#include "reulab/field.hpp"

namespace reulab {

// P_+ / P_- helical parts of a field; plus + minus reconstructs the Leray
// projection of the source.
struct WaveSplit {
  SpectralVectorField plus;
  SpectralVectorField minus;
};

// Leray-Helmholtz projection v_hat -> v_hat - xi (xi . v_hat) / |xi|^2.
// The k=0 row is zeroed (mean-zero convention).
SpectralVectorField leray_project(const SpectralVectorField& v);

// Helical projections P_pm v = (Pv -+/+ i (xi/|xi|) x v_hat) / 2. The Leray
// projection is applied internally first so the P_pm identities hold for any
// input.
WaveSplit wave_split(const SpectralVectorField& v);

// P(e3 x v) for divergence-free v, computed directly (cross product then
// Leray). Rejects inputs whose divergence defect exceeds `div_tol` relative.
SpectralVectorField coriolis_rotation_term(const SpectralVectorField& v, double div_tol = 1e-8);

// The same operator through the helical identity -i (xi3/|xi|)(P+ v - P- v);
// used to cross-check coriolis_rotation_term.
SpectralVectorField coriolis_rotation_term_via_split(const SpectralVectorField& v);

// Exact solution operator of du/dt + P Omega e3 x u = 0 on divergence-free
// mean-zero fields: e^{+i Omega t xi3/|xi|} P+ v + e^{-...} P- v. An L^2
// isometry for every Omega, t.
SpectralVectorField coriolis_propagator(const SpectralVectorField& v, double omega, double t);

// Heat semigroup multiplier e^{-nu t |xi|^2}; rejects negative nu or t.
SpectralVectorField heat_propagator(const SpectralVectorField& v, double nu, double t);
SpectralScalarField heat_propagator(const SpectralScalarField& f, double nu, double t);

}  // namespace reulab
