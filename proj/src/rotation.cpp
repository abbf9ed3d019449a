#include "reulab/rotation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "reulab/spectral_ops.hpp"

namespace reulab {

namespace {

struct Xi {
  double x1, x2, x3;
  double norm2() const { return x1 * x1 + x2 * x2 + x3 * x3; }
};

template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.xi(j);
      for (int k = 0; k < n; ++k) {
        fn(g.index(i, j, k), Xi{xi1, xi2, g.xi(k)});
      }
    }
  }
}

}  // namespace

SpectralVectorField leray_project(const SpectralVectorField& v) {
  SpectralVectorField out = v;
  for_each_mode(v.grid(), [&](std::size_t m, const Xi& xi) {
    const double n2 = xi.norm2();
    if (n2 == 0.0) {
      for (int c = 0; c < 3; ++c) out[c].coeffs()[m] = Complex{0.0, 0.0};
      return;
    }
    const Complex dot =
        xi.x1 * out[0].coeffs()[m] + xi.x2 * out[1].coeffs()[m] + xi.x3 * out[2].coeffs()[m];
    const Complex scale = dot / n2;
    out[0].coeffs()[m] -= xi.x1 * scale;
    out[1].coeffs()[m] -= xi.x2 * scale;
    out[2].coeffs()[m] -= xi.x3 * scale;
  });
  return out;
}

WaveSplit wave_split(const SpectralVectorField& v) {
  SpectralVectorField w = leray_project(v);
  WaveSplit split{SpectralVectorField(v.grid()), SpectralVectorField(v.grid())};
  for_each_mode(v.grid(), [&](std::size_t m, const Xi& xi) {
    const double norm = std::sqrt(xi.norm2());
    if (norm == 0.0) return;
    const double e1 = xi.x1 / norm, e2 = xi.x2 / norm, e3 = xi.x3 / norm;
    const Complex a = w[0].coeffs()[m], b = w[1].coeffs()[m], c = w[2].coeffs()[m];
    // i (xi/|xi|) x w_hat
    const Complex I{0.0, 1.0};
    const Complex cx = I * (e2 * c - e3 * b);
    const Complex cy = I * (e3 * a - e1 * c);
    const Complex cz = I * (e1 * b - e2 * a);
    split.plus[0].coeffs()[m] = 0.5 * (a + cx);
    split.plus[1].coeffs()[m] = 0.5 * (b + cy);
    split.plus[2].coeffs()[m] = 0.5 * (c + cz);
    split.minus[0].coeffs()[m] = 0.5 * (a - cx);
    split.minus[1].coeffs()[m] = 0.5 * (b - cy);
    split.minus[2].coeffs()[m] = 0.5 * (c - cz);
  });
  return split;
}

SpectralVectorField coriolis_rotation_term(const SpectralVectorField& v, double div_tol) {
  const double defect = relative_divergence_defect(v);
  if (defect > div_tol) {
    throw std::invalid_argument("coriolis_rotation_term: input not divergence-free (defect " +
                                std::to_string(defect) + ")");
  }
  // e3 x v is componentwise in Fourier space: (-v2, v1, 0).
  SpectralVectorField crossed(v.grid());
  const std::size_t sz = v.grid().size();
  for (std::size_t m = 0; m < sz; ++m) {
    crossed[0].coeffs()[m] = -v[1].coeffs()[m];
    crossed[1].coeffs()[m] = v[0].coeffs()[m];
  }
  return leray_project(crossed);
}

SpectralVectorField coriolis_rotation_term_via_split(const SpectralVectorField& v) {
  WaveSplit split = wave_split(v);
  SpectralVectorField out(v.grid());
  for_each_mode(v.grid(), [&](std::size_t m, const Xi& xi) {
    const double norm = std::sqrt(xi.norm2());
    if (norm == 0.0) return;
    const Complex factor = Complex{0.0, -1.0} * (xi.x3 / norm);
    for (int c = 0; c < 3; ++c) {
      out[c].coeffs()[m] = factor * (split.plus[c].coeffs()[m] - split.minus[c].coeffs()[m]);
    }
  });
  return out;
}

SpectralVectorField coriolis_propagator(const SpectralVectorField& v, double omega, double t) {
  WaveSplit split = wave_split(v);
  SpectralVectorField out(v.grid());
  for_each_mode(v.grid(), [&](std::size_t m, const Xi& xi) {
    const double norm = std::sqrt(xi.norm2());
    if (norm == 0.0) return;
    const double phase = omega * t * (xi.x3 / norm);
    const Complex ep = std::polar(1.0, phase);
    const Complex em = std::conj(ep);
    for (int c = 0; c < 3; ++c) {
      out[c].coeffs()[m] = ep * split.plus[c].coeffs()[m] + em * split.minus[c].coeffs()[m];
    }
  });
  return out;
}

SpectralScalarField heat_propagator(const SpectralScalarField& f, double nu, double t) {
  if (nu < 0.0 || t < 0.0) {
    throw std::invalid_argument("heat_propagator: nu and t must be nonnegative");
  }
  SpectralScalarField out = f;
  for_each_mode(f.grid(), [&](std::size_t m, const Xi& xi) {
    out.coeffs()[m] *= std::exp(-nu * t * xi.norm2());
  });
  return out;
}

SpectralVectorField heat_propagator(const SpectralVectorField& v, double nu, double t) {
  return SpectralVectorField(heat_propagator(v[0], nu, t), heat_propagator(v[1], nu, t),
                             heat_propagator(v[2], nu, t));
}

}  // namespace reulab
