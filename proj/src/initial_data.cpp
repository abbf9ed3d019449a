#include "reulab/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "reulab/fft.hpp"
#include "reulab/rotation.hpp"
#include "reulab/spectral_ops.hpp"

namespace reulab {

namespace {

// Canonical representative of a conjugate pair of integer wavevectors.
bool is_canonical(int kx, int ky, int kz) {
  if (kx != 0) return kx > 0;
  if (ky != 0) return ky > 0;
  return kz > 0;
}

struct Vec3 {
  double x, y, z;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

// A real unit vector orthogonal to xi.
Vec3 transverse_unit(const Vec3& xi) {
  const Vec3 axis = (std::abs(xi.x) < 1e-12 && std::abs(xi.y) < 1e-12) ? Vec3{1.0, 0.0, 0.0}
                                                                       : Vec3{0.0, 0.0, 1.0};
  return normalized(cross(xi, axis));
}

}  // namespace

SpectralVectorField taylor_green(const Grid& grid, double amplitude) {
  const int n = grid.n();
  std::array<std::vector<double>, 3> vals;
  for (auto& v : vals) v.assign(grid.size(), 0.0);
  const double scale = 2.0 * M_PI / grid.box_size() * grid.dx();  // = 2 pi / n
  for (int i = 0; i < n; ++i) {
    const double x = scale * i;
    for (int j = 0; j < n; ++j) {
      const double y = scale * j;
      for (int k = 0; k < n; ++k) {
        const double z = scale * k;
        const std::size_t m = grid.index(i, j, k);
        vals[0][m] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        vals[1][m] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
      }
    }
  }
  return to_spectral(grid, vals);
}

SpectralVectorField beltrami_mode(const Grid& grid, const std::array<int, 3>& kvec,
                                  double amplitude, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("beltrami_mode: sign must be +1 or -1");
  if (kvec[0] == 0 && kvec[1] == 0 && kvec[2] == 0) {
    throw std::invalid_argument("beltrami_mode: wavevector must be nonzero");
  }
  const int n = grid.n();
  for (int c = 0; c < 3; ++c) {
    if (std::abs(kvec[c]) >= n / 2) {
      throw std::invalid_argument("beltrami_mode: wavevector not resolved by grid");
    }
  }
  const double f = 2.0 * M_PI / grid.box_size();
  const Vec3 xi{f * kvec[0], f * kvec[1], f * kvec[2]};
  const Vec3 xi_hat = normalized(xi);
  const Vec3 e = transverse_unit(xi);
  const Vec3 xe = cross(xi_hat, e);

  // Coefficient h = e + sign * i (xi_hat x e) at +k, conjugate at -k.
  SpectralVectorField u(grid);
  const int i = kvec[0] >= 0 ? kvec[0] : kvec[0] + n;
  const int j = kvec[1] >= 0 ? kvec[1] : kvec[1] + n;
  const int k = kvec[2] >= 0 ? kvec[2] : kvec[2] + n;
  const Complex h[3] = {Complex{e.x, sign * xe.x}, Complex{e.y, sign * xe.y},
                        Complex{e.z, sign * xe.z}};
  const std::size_t m = grid.index(i, j, k);
  const std::size_t mc = grid.index(grid.conj_index(i), grid.conj_index(j), grid.conj_index(k));
  for (int c = 0; c < 3; ++c) {
    u[c].coeffs()[m] = 0.5 * h[c];
    u[c].coeffs()[mc] = 0.5 * std::conj(h[c]);
  }
  const double nrm = l2_norm(u);
  u *= amplitude / nrm;
  return u;
}

SpectralVectorField random_solenoidal(const Grid& grid, double k0, double amplitude,
                                      std::uint64_t seed) {
  if (!(k0 > 0.0)) throw std::invalid_argument("random_solenoidal: k0 must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpectralVectorField u(grid);
  const int n = grid.n();
  const int kmax = n / 3;  // dealias-safe band
  for (int i = 0; i < n; ++i) {
    const int kx = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int ky = grid.wavenumber(j);
      for (int k = 0; k < n; ++k) {
        const int kz = grid.wavenumber(k);
        if (!is_canonical(kx, ky, kz)) continue;
        const double kk = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        if (kk > kmax) continue;
        // Per-mode amplitude so the shell-summed spectrum is k^4 exp(-2k^2/k0^2).
        const double amp = kk * std::exp(-kk * kk / (k0 * k0));
        const std::size_t m = grid.index(i, j, k);
        const std::size_t mc =
            grid.index(grid.conj_index(i), grid.conj_index(j), grid.conj_index(k));
        for (int c = 0; c < 3; ++c) {
          const Complex a{gauss(rng), gauss(rng)};
          u[c].coeffs()[m] = amp * a;
          u[c].coeffs()[mc] = amp * std::conj(a);
        }
      }
    }
  }
  u = leray_project(u);
  const double nrm = l2_norm(u);
  if (nrm == 0.0) throw std::runtime_error("random_solenoidal: degenerate draw");
  u *= amplitude / nrm;
  return u;
}

SpectralScalarField random_scalar_band(const Grid& grid, int kmin, int kmax, std::uint64_t seed) {
  if (kmin < 0 || kmax < kmin) throw std::invalid_argument("random_scalar_band: bad band");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralScalarField f(grid);
  const int n = grid.n();
  for (int i = 0; i < n; ++i) {
    const int kx = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int ky = grid.wavenumber(j);
      for (int k = 0; k < n; ++k) {
        const int kz = grid.wavenumber(k);
        if (!is_canonical(kx, ky, kz)) continue;
        if (std::abs(kx) >= n / 2 || std::abs(ky) >= n / 2 || std::abs(kz) >= n / 2) continue;
        const double kk = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        if (kk < kmin || kk > kmax) continue;
        const Complex a{gauss(rng), gauss(rng)};
        f.coeffs()[grid.index(i, j, k)] = a;
        f.coeffs()[grid.index(grid.conj_index(i), grid.conj_index(j), grid.conj_index(k))] =
            std::conj(a);
      }
    }
  }
  return f;
}

SpectralVectorField random_solenoidal_band(const Grid& grid, int kmin, int kmax,
                                           std::uint64_t seed) {
  SpectralVectorField v(random_scalar_band(grid, kmin, kmax, seed),
                        random_scalar_band(grid, kmin, kmax, seed + 0x9e3779b97f4a7c15ULL),
                        random_scalar_band(grid, kmin, kmax, seed + 0x3c6ef372fe94f82aULL));
  return leray_project(v);
}

SpectralVectorField coherent_shell_field(const Grid& grid, const DyadicPartition& part, int j,
                                         double amplitude) {
  if (grid != part.grid()) throw std::invalid_argument("coherent_shell_field: grid mismatch");
  SpectralVectorField u(grid);
  const std::vector<double>& bump = part.bump(j);
  const int n = grid.n();
  for (int a = 0; a < n; ++a) {
    const double x1 = grid.xi(a);
    for (int b = 0; b < n; ++b) {
      const double x2 = grid.xi(b);
      for (int c = 0; c < n; ++c) {
        const std::size_t m = grid.index(a, b, c);
        if (bump[m] == 0.0) continue;
        const double x3 = grid.xi(c);
        const double r = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
        // i (xi_hat x e3): pure imaginary and odd in xi, hence Hermitian.
        u[0].coeffs()[m] = Complex{0.0, bump[m] * x2 / r};
        u[1].coeffs()[m] = Complex{0.0, -bump[m] * x1 / r};
      }
    }
  }
  const double nrm = l2_norm(u);
  if (nrm == 0.0) throw std::invalid_argument("coherent_shell_field: shell holds no grid modes");
  u *= amplitude / nrm;
  return u;
}

}  // namespace reulab
