#pragma once

#include <vector>

#include "reulab/field.hpp"
#include "reulab/spectral_ops.hpp"

namespace reulab {

// Dyadic partition of unity on the grid frequencies: radial bumps phi_j
// supported in {2^{j-1} <= |xi| <= 2^{j+1}} with values in [0,1], telescoping
// to 1 on every covered annulus, plus the low-pass psi = S_0.
class DyadicPartition {
 public:
  // Throws when the grid cannot host at least 3 dyadic shells (n < 16).
  static DyadicPartition build(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  // phi_j evaluated on grid frequencies, row-major. j in [j_min, j_max].
  const std::vector<double>& bump(int j) const;
  // psi = S_0 low-pass profile on grid frequencies.
  const std::vector<double>& psi_hat() const { return psi_hat_; }
  // S_k low-pass profile, k in [j_min-1, j_max].
  std::vector<double> low_pass_profile(int k) const;

  // Value of the S_k symbol at radius rho, for any k.
  static double lowpass_value(double rho, int k);

  // |xi| per grid point.
  const std::vector<double>& radius() const { return rho_; }

 private:
  DyadicPartition(const Grid& grid, int j_min, int j_max);

  Grid grid_;
  int j_min_;
  int j_max_;
  std::vector<double> rho_;
  std::vector<std::vector<double>> bumps_;
  std::vector<double> psi_hat_;
};

struct BesovIndex {
  double s = 0.0;
  Lp p = Lp::two;
  Lp q = Lp::one;
  bool homogeneous = false;
};

// Frequency block Delta_j f; j out of the partition range is rejected.
SpectralScalarField lp_block(const SpectralScalarField& f, const DyadicPartition& part, int j);
SpectralVectorField lp_block(const SpectralVectorField& v, const DyadicPartition& part, int j);

// Low-pass S_k f; support inside {|xi| <= 2^{k+1}}.
SpectralScalarField low_pass(const SpectralScalarField& f, const DyadicPartition& part, int k);

// Homogeneous: l^q over j in [j_min, j_max] of 2^{sj} ||Delta_j f||_{L^p}.
// Inhomogeneous: same over j >= 1 plus ||psi * f||_{L^p}.
double besov_norm(const SpectralScalarField& f, const DyadicPartition& part, const BesovIndex& idx);
double besov_norm(const SpectralVectorField& v, const DyadicPartition& part, const BesovIndex& idx);

}  // namespace reulab
