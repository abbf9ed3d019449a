#include "reulab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reulab {

namespace {

// Smooth step: 0 for t <= 0, 1 for t >= 1, C^inf in between.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Radial cutoff: exactly 1 on [0,1], exactly 0 on [2,inf).
double chi(double rho) { return smooth_step(2.0 - rho); }

// phi_0 profile: chi(rho) - chi(2 rho), supported in [1/2, 2], and the
// dilates phi_j(rho) = phi_0(2^{-j} rho) telescope to chi(2^{-b} rho) -
// chi(2^{-a+1} rho) over j in [a, b].
double bump_profile(double rho, int j) {
  const double scaled = std::ldexp(rho, -j);  // 2^{-j} rho
  return chi(scaled) - chi(2.0 * scaled);
}

}  // namespace

DyadicPartition::DyadicPartition(const Grid& grid, int j_min, int j_max)
    : grid_(grid), j_min_(j_min), j_max_(j_max) {}

DyadicPartition DyadicPartition::build(const Grid& grid) {
  if (grid.n() < 16) {
    throw std::invalid_argument("DyadicPartition: grid too small for 3 dyadic shells (n < 16)");
  }
  const double xi_min = 2.0 * M_PI / grid.box_size();
  const double xi_max = grid.max_frequency();
  const int j_min = static_cast<int>(std::floor(std::log2(xi_min) + 1e-12));
  const int j_max = static_cast<int>(std::ceil(std::log2(xi_max) - 1e-12));

  DyadicPartition part(grid, j_min, j_max);
  const int n = grid.n();
  part.rho_.resize(grid.size());
  for (int i = 0; i < n; ++i) {
    const double xi1 = grid.xi(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = grid.xi(j);
      for (int k = 0; k < n; ++k) {
        const double xi3 = grid.xi(k);
        part.rho_[grid.index(i, j, k)] = std::sqrt(xi1 * xi1 + xi2 * xi2 + xi3 * xi3);
      }
    }
  }

  part.bumps_.resize(static_cast<std::size_t>(j_max - j_min + 1));
  for (int j = j_min; j <= j_max; ++j) {
    std::vector<double>& b = part.bumps_[static_cast<std::size_t>(j - j_min)];
    b.resize(grid.size());
    for (std::size_t m = 0; m < b.size(); ++m) b[m] = bump_profile(part.rho_[m], j);
  }
  part.psi_hat_.resize(grid.size());
  for (std::size_t m = 0; m < part.psi_hat_.size(); ++m) part.psi_hat_[m] = chi(part.rho_[m]);
  return part;
}

const std::vector<double>& DyadicPartition::bump(int j) const {
  if (j < j_min_ || j > j_max_) {
    throw std::invalid_argument("DyadicPartition: shell index " + std::to_string(j) +
                                " outside [" + std::to_string(j_min_) + "," +
                                std::to_string(j_max_) + "]");
  }
  return bumps_[static_cast<std::size_t>(j - j_min_)];
}

std::vector<double> DyadicPartition::low_pass_profile(int k) const {
  if (k < j_min_ - 1 || k > j_max_) {
    throw std::invalid_argument("DyadicPartition: low-pass index " + std::to_string(k) +
                                " outside [" + std::to_string(j_min_ - 1) + "," +
                                std::to_string(j_max_) + "]");
  }
  std::vector<double> out(rho_.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = chi(std::ldexp(rho_[m], -k));
  return out;
}

double DyadicPartition::lowpass_value(double rho, int k) { return chi(std::ldexp(rho, -k)); }

namespace {
SpectralScalarField apply_profile(const SpectralScalarField& f, const std::vector<double>& prof) {
  SpectralScalarField out = f;
  for (std::size_t m = 0; m < prof.size(); ++m) out.coeffs()[m] *= prof[m];
  return out;
}
}  // namespace

SpectralScalarField lp_block(const SpectralScalarField& f, const DyadicPartition& part, int j) {
  if (f.grid() != part.grid()) throw std::invalid_argument("lp_block: grid mismatch");
  return apply_profile(f, part.bump(j));
}

SpectralVectorField lp_block(const SpectralVectorField& v, const DyadicPartition& part, int j) {
  return SpectralVectorField(lp_block(v[0], part, j), lp_block(v[1], part, j),
                             lp_block(v[2], part, j));
}

SpectralScalarField low_pass(const SpectralScalarField& f, const DyadicPartition& part, int k) {
  if (f.grid() != part.grid()) throw std::invalid_argument("low_pass: grid mismatch");
  return apply_profile(f, part.low_pass_profile(k));
}

namespace {

double lq_accumulate(const std::vector<double>& terms, Lp q) {
  switch (q) {
    case Lp::one: {
      double s = 0.0;
      for (double t : terms) s += t;
      return s;
    }
    case Lp::two: {
      double s = 0.0;
      for (double t : terms) s += t * t;
      return std::sqrt(s);
    }
    case Lp::inf: {
      double s = 0.0;
      for (double t : terms) s = std::max(s, t);
      return s;
    }
  }
  throw std::invalid_argument("besov_norm: unsupported q");
}

SpectralScalarField apply_psi(const SpectralScalarField& f, const DyadicPartition& part) {
  SpectralScalarField out = f;
  const std::vector<double>& psi = part.psi_hat();
  for (std::size_t m = 0; m < psi.size(); ++m) out.coeffs()[m] *= psi[m];
  return out;
}

SpectralVectorField apply_psi(const SpectralVectorField& v, const DyadicPartition& part) {
  return SpectralVectorField(apply_psi(v[0], part), apply_psi(v[1], part), apply_psi(v[2], part));
}

template <class Field>
double besov_norm_impl(const Field& f, const DyadicPartition& part, const BesovIndex& idx) {
  std::vector<double> terms;
  const int j_lo = idx.homogeneous ? part.j_min() : std::max(1, part.j_min());
  for (int j = j_lo; j <= part.j_max(); ++j) {
    const double block_norm = lp_norm(lp_block(f, part, j), idx.p);
    terms.push_back(std::pow(2.0, idx.s * j) * block_norm);
  }
  double result = lq_accumulate(terms, idx.q);
  if (!idx.homogeneous) {
    result += lp_norm(apply_psi(f, part), idx.p);
  }
  return result;
}

}  // namespace

double besov_norm(const SpectralScalarField& f, const DyadicPartition& part,
                  const BesovIndex& idx) {
  return besov_norm_impl(f, part, idx);
}

double besov_norm(const SpectralVectorField& v, const DyadicPartition& part,
                  const BesovIndex& idx) {
  return besov_norm_impl(v, part, idx);
}

}  // namespace reulab
