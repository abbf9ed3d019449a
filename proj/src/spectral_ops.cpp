#include "reulab/spectral_ops.hpp"

#include <algorithm>
#include <cstdlib>

namespace reulab {

std::string lp_name(Lp p) {
  switch (p) {
    case Lp::one: return "1";
    case Lp::two: return "2";
    case Lp::inf: return "inf";
  }
  return "?";
}

SpectralScalarField partial(const SpectralScalarField& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("partial: axis must be 0, 1 or 2");
  const Grid& g = f.grid();
  SpectralScalarField out(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double xi = axis == 0 ? g.xi(i) : (axis == 1 ? g.xi(j) : g.xi(k));
        out.at(i, j, k) = Complex{0.0, xi} * f.at(i, j, k);
      }
    }
  }
  return out;
}

SpectralVectorField gradient(const SpectralScalarField& f) {
  return SpectralVectorField(partial(f, 0), partial(f, 1), partial(f, 2));
}

SpectralScalarField divergence(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  SpectralScalarField out(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.xi(j);
      for (int k = 0; k < n; ++k) {
        const double xi3 = g.xi(k);
        out.at(i, j, k) = Complex{0.0, 1.0} * (xi1 * v[0].at(i, j, k) + xi2 * v[1].at(i, j, k) +
                                               xi3 * v[2].at(i, j, k));
      }
    }
  }
  return out;
}

SpectralVectorField curl(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  SpectralVectorField out(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.xi(j);
      for (int k = 0; k < n; ++k) {
        const double xi3 = g.xi(k);
        const Complex I{0.0, 1.0};
        const Complex a = v[0].at(i, j, k), b = v[1].at(i, j, k), c = v[2].at(i, j, k);
        out[0].at(i, j, k) = I * (xi2 * c - xi3 * b);
        out[1].at(i, j, k) = I * (xi3 * a - xi1 * c);
        out[2].at(i, j, k) = I * (xi1 * b - xi2 * a);
      }
    }
  }
  return out;
}

SpectralScalarField laplacian(const SpectralScalarField& f) {
  const Grid& g = f.grid();
  SpectralScalarField out(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.xi(j);
      for (int k = 0; k < n; ++k) {
        const double xi3 = g.xi(k);
        out.at(i, j, k) = -(xi1 * xi1 + xi2 * xi2 + xi3 * xi3) * f.at(i, j, k);
      }
    }
  }
  return out;
}

SpectralScalarField dealias(const SpectralScalarField& f) {
  const Grid& g = f.grid();
  SpectralScalarField out = f;
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const bool cut_i = 3 * std::abs(g.wavenumber(i)) > n;
    for (int j = 0; j < n; ++j) {
      const bool cut_j = 3 * std::abs(g.wavenumber(j)) > n;
      for (int k = 0; k < n; ++k) {
        if (cut_i || cut_j || 3 * std::abs(g.wavenumber(k)) > n) {
          out.at(i, j, k) = Complex{0.0, 0.0};
        }
      }
    }
  }
  return out;
}

SpectralVectorField dealias(const SpectralVectorField& v) {
  return SpectralVectorField(dealias(v[0]), dealias(v[1]), dealias(v[2]));
}

double l2_norm(const SpectralScalarField& f) {
  const double vol = std::pow(f.grid().box_size(), 3);
  double sum = 0.0;
  for (const Complex& c : f.coeffs()) sum += std::norm(c);
  return std::sqrt(vol * sum);
}

double l2_norm(const SpectralVectorField& v) {
  const double vol = std::pow(v.grid().box_size(), 3);
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (const Complex& x : v[c].coeffs()) sum += std::norm(x);
  }
  return std::sqrt(vol * sum);
}

double lp_norm(const SpectralScalarField& f, Lp p) {
  switch (p) {
    case Lp::two:
      return l2_norm(f);
    case Lp::one: {
      const std::vector<double> vals = to_physical(f);
      const double cell = std::pow(f.grid().dx(), 3);
      double sum = 0.0;
      for (double v : vals) sum += std::abs(v);
      return cell * sum;
    }
    case Lp::inf: {
      const std::vector<double> vals = to_physical(f);
      double m = 0.0;
      for (double v : vals) m = std::max(m, std::abs(v));
      return m;
    }
  }
  throw std::invalid_argument("lp_norm: unsupported p");
}

double lp_norm(const SpectralVectorField& v, Lp p) {
  if (p == Lp::two) return l2_norm(v);
  const auto vals = to_physical(v);
  const std::size_t m = vals[0].size();
  if (p == Lp::inf) {
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double mag2 =
          vals[0][i] * vals[0][i] + vals[1][i] * vals[1][i] + vals[2][i] * vals[2][i];
      best = std::max(best, mag2);
    }
    return std::sqrt(best);
  }
  const double cell = std::pow(v.grid().dx(), 3);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sum += std::sqrt(vals[0][i] * vals[0][i] + vals[1][i] * vals[1][i] + vals[2][i] * vals[2][i]);
  }
  return cell * sum;
}

double divergence_defect(const SpectralVectorField& v) {
  const Grid& g = v.grid();
  const int n = g.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.xi(j);
      for (int k = 0; k < n; ++k) {
        const double xi3 = g.xi(k);
        const Complex d =
            xi1 * v[0].at(i, j, k) + xi2 * v[1].at(i, j, k) + xi3 * v[2].at(i, j, k);
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  return worst;
}

double relative_divergence_defect(const SpectralVectorField& v) {
  const double m = v.max_abs_coeff();
  if (m == 0.0) return 0.0;
  return divergence_defect(v) / m;
}

void zero_mean(SpectralScalarField& f) { f.at(0, 0, 0) = Complex{0.0, 0.0}; }

void zero_mean(SpectralVectorField& v) {
  for (int c = 0; c < 3; ++c) zero_mean(v[c]);
}

void symmetrize_hermitian(SpectralScalarField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const int ic = g.conj_index(i);
    for (int j = 0; j < n; ++j) {
      const int jc = g.conj_index(j);
      for (int k = 0; k < n; ++k) {
        const int kc = g.conj_index(k);
        const std::size_t a = g.index(i, j, k);
        const std::size_t b = g.index(ic, jc, kc);
        if (a > b) continue;
        const Complex avg = 0.5 * (f.coeffs()[a] + std::conj(f.coeffs()[b]));
        f.coeffs()[a] = avg;
        f.coeffs()[b] = std::conj(avg);
      }
    }
  }
}

SpectralScalarField reflect(const SpectralScalarField& f) {
  const Grid& g = f.grid();
  SpectralScalarField out(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    const int ic = g.conj_index(i);
    for (int j = 0; j < n; ++j) {
      const int jc = g.conj_index(j);
      for (int k = 0; k < n; ++k) {
        out.at(i, j, k) = f.at(ic, jc, g.conj_index(k));
      }
    }
  }
  return out;
}

SpectralVectorField reflect(const SpectralVectorField& v) {
  return SpectralVectorField(reflect(v[0]), reflect(v[1]), reflect(v[2]));
}

SpectralScalarField pointwise_product(const SpectralScalarField& a, const SpectralScalarField& b,
                                      bool apply_dealias) {
  if (a.grid() != b.grid()) throw std::invalid_argument("pointwise_product: grid mismatch");
  const std::vector<double> pa = to_physical(a);
  const std::vector<double> pb = to_physical(b);
  std::vector<double> prod(pa.size());
  for (std::size_t m = 0; m < prod.size(); ++m) prod[m] = pa[m] * pb[m];
  SpectralScalarField out = to_spectral(a.grid(), prod);
  return apply_dealias ? dealias(out) : out;
}

SpectralScalarField advect(const SpectralVectorField& v, const SpectralScalarField& f,
                           bool apply_dealias) {
  if (v.grid() != f.grid()) throw std::invalid_argument("advect: grid mismatch");
  const auto vp = to_physical(v);
  std::vector<double> acc(f.grid().size(), 0.0);
  for (int a = 0; a < 3; ++a) {
    const std::vector<double> da = to_physical(partial(f, a));
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += vp[a][m] * da[m];
  }
  SpectralScalarField out = to_spectral(f.grid(), acc);
  return apply_dealias ? dealias(out) : out;
}

SpectralVectorField advect(const SpectralVectorField& v, const SpectralVectorField& f,
                           bool apply_dealias) {
  return SpectralVectorField(advect(v, f[0], apply_dealias), advect(v, f[1], apply_dealias),
                             advect(v, f[2], apply_dealias));
}

}  // namespace reulab
