#include "reulab/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "reulab/csv.hpp"
#include "reulab/fft.hpp"
#include "reulab/initial_data.hpp"
#include "reulab/rotation.hpp"
#include "reulab/spectral_ops.hpp"

namespace reulab {

namespace {

constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;

EmpiricalConstantReport summarize(std::string lemma_id, std::vector<double> ratios,
                                  std::uint64_t seed) {
  if (ratios.empty()) {
    throw std::invalid_argument("verifier '" + lemma_id + "': empty ensemble");
  }
  for (double r : ratios) {
    if (!std::isfinite(r)) {
      throw std::runtime_error("verifier '" + lemma_id + "': non-finite ratio observed");
    }
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  EmpiricalConstantReport report;
  report.lemma_id = std::move(lemma_id);
  report.samples = static_cast<int>(ratios.size());
  report.min_ratio = sorted.front();
  report.max_ratio = sorted.back();
  const std::size_t mid = sorted.size() / 2;
  report.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  report.seed = seed;
  return report;
}

double grad_sup_scalar(const SpectralScalarField& f) {
  double g = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (double v : to_physical(partial(f, a))) g = std::max(g, std::abs(v));
  }
  return g;
}

double grad_sup_vector(const SpectralVectorField& u) {
  double g = 0.0;
  for (int c = 0; c < 3; ++c) g = std::max(g, grad_sup_scalar(u[c]));
  return g;
}

// l^q accumulation of 2^{sj} ||block_j||_p over the partition range.
template <class BlockNorm>
double weighted_block_sum(const DyadicPartition& part, double s, Lp q, BlockNorm&& norm_of_block) {
  std::vector<double> terms;
  for (int j = part.j_min(); j <= part.j_max(); ++j) {
    terms.push_back(std::pow(2.0, s * j) * norm_of_block(j));
  }
  switch (q) {
    case Lp::one: {
      double acc = 0.0;
      for (double t : terms) acc += t;
      return acc;
    }
    case Lp::two: {
      double acc = 0.0;
      for (double t : terms) acc += t * t;
      return std::sqrt(acc);
    }
    case Lp::inf: {
      double acc = 0.0;
      for (double t : terms) acc = std::max(acc, t);
      return acc;
    }
  }
  throw std::invalid_argument("weighted_block_sum: unsupported q");
}

double reciprocal(Lp p) {
  switch (p) {
    case Lp::one: return 1.0;
    case Lp::two: return 0.5;
    case Lp::inf: return 0.0;
  }
  return 0.0;
}

}  // namespace

void write_reports_csv(const std::string& path,
                       const std::vector<EmpiricalConstantReport>& reports) {
  csv::Writer w(path);
  w.write_header({"lemma-id", "sample-count", "min-ratio", "max-ratio", "median", "seed"});
  for (const EmpiricalConstantReport& r : reports) {
    w.write_row({r.lemma_id, std::to_string(r.samples), csv::format_double(r.min_ratio),
                 csv::format_double(r.max_ratio), csv::format_double(r.median),
                 std::to_string(r.seed)});
  }
}

EmpiricalConstantReport verify_bernstein(const DyadicPartition& part, int ensemble_size,
                                         int k_order, Lp p, std::uint64_t seed) {
  if (ensemble_size < 1) throw std::invalid_argument("verify_bernstein: empty ensemble");
  if (k_order != 1 && k_order != 2) {
    throw std::invalid_argument("verify_bernstein: k_order must be 1 or 2");
  }
  const Grid& grid = part.grid();
  // Shells with grid modes strictly inside the resolved band.
  const int j_lo = part.j_min();
  const int j_hi = part.j_max() - 1;

  std::vector<double> ratios;
  for (int i = 0; i < ensemble_size; ++i) {
    const int j = j_lo + i % (j_hi - j_lo + 1);
    SpectralScalarField f = lp_block(
        random_scalar_band(grid, 1, grid.n() / 2 - 1, seed + kSeedStride * (i + 1)), part, j);
    const double base = lp_norm(f, p);
    if (base == 0.0) continue;
    double deriv_norm;
    if (k_order == 1) {
      deriv_norm = lp_norm(gradient(f), p);
    } else {
      deriv_norm = lp_norm(laplacian(f), p);
    }
    ratios.push_back(deriv_norm / (std::pow(2.0, k_order * j) * base));
  }
  return summarize("bernstein-k" + std::to_string(k_order) + "-p" + lp_name(p), std::move(ratios),
                   seed);
}

EmpiricalConstantReport verify_heat_smoothing(const DyadicPartition& part, double nu,
                                              int ensemble_size, double s0, double s1,
                                              const std::vector<double>& t_list,
                                              std::uint64_t seed) {
  if (s1 < s0) throw std::invalid_argument("verify_heat_smoothing: requires s0 <= s1");
  if (ensemble_size < 1) throw std::invalid_argument("verify_heat_smoothing: empty ensemble");
  for (double t : t_list) {
    if (!(t > 0.0)) throw std::invalid_argument("verify_heat_smoothing: t_list must be positive");
  }
  const Grid& grid = part.grid();
  const BesovIndex top{s1, Lp::two, Lp::one, false};
  const BesovIndex bottom{s0, Lp::two, Lp::one, false};

  std::vector<double> ratios;
  for (int i = 0; i < ensemble_size; ++i) {
    SpectralScalarField f = random_scalar_band(grid, 1, grid.n() / 3, seed + kSeedStride * (i + 1));
    const double denom_norm = besov_norm(f, part, bottom);
    if (denom_norm == 0.0) continue;
    for (double t : t_list) {
      const SpectralScalarField smoothed = heat_propagator(f, nu, t);
      const double envelope = 1.0 + std::pow(t, -0.5 * (s1 - s0));
      ratios.push_back(besov_norm(smoothed, part, top) / (envelope * denom_norm));
    }
  }
  return summarize("heat-smoothing", std::move(ratios), seed);
}

EmpiricalConstantReport verify_commutator(const DyadicPartition& part, int ensemble_size, double s,
                                          Lp p, Lp q, std::uint64_t seed,
                                          CommutatorVariant variant) {
  if (ensemble_size < 1) throw std::invalid_argument("verify_commutator: empty ensemble");
  const Grid& grid = part.grid();
  const int band_hi = grid.n() / 3;

  std::vector<double> ratios;
  for (int i = 0; i < ensemble_size; ++i) {
    const std::uint64_t s_a = seed + kSeedStride * (2 * i + 1);
    const std::uint64_t s_b = seed + kSeedStride * (2 * i + 2);

    if (variant == CommutatorVariant::low_high) {
      // (S_{j-2} u . grad) Delta_j u - Delta_j (u . grad) u against
      // ||grad u||_inf ||u||_{B^s_{p,q}}.
      SpectralVectorField u = random_solenoidal_band(grid, 1, band_hi, s_a);
      const SpectralVectorField adv = advect(u, u, true);
      const double rhs = grad_sup_vector(u) * besov_norm(u, part, BesovIndex{s, p, q, false});
      if (rhs == 0.0) continue;
      const double lhs = weighted_block_sum(part, s, q, [&](int j) {
        SpectralVectorField low(grid);
        const int n = grid.n();
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
              const std::size_t m = grid.index(a, b, c);
              const double w = DyadicPartition::lowpass_value(part.radius()[m], j - 2);
              for (int comp = 0; comp < 3; ++comp) low[comp].coeffs()[m] = w * u[comp].coeffs()[m];
            }
          }
        }
        const SpectralVectorField block_u = lp_block(u, part, j);
        SpectralVectorField diff = advect(low, block_u, true) - lp_block(adv, part, j);
        return lp_norm(diff, p);
      });
      ratios.push_back(lhs / rhs);
      continue;
    }

    SpectralVectorField v = random_solenoidal_band(grid, 1, band_hi, s_a);
    SpectralScalarField theta = random_scalar_band(grid, 1, band_hi, s_b);
    const SpectralScalarField vtheta = advect(v, theta, true);

    double rhs;
    if (variant == CommutatorVariant::transport) {
      rhs = grad_sup_vector(v) * besov_norm(theta, part, BesovIndex{s, p, q, true}) +
            grad_sup_scalar(theta) * besov_norm(v, part, BesovIndex{s, p, q, true});
    } else {
      // s > -1 variant: ||grad v||_inf ||theta||_{B^s} + ||theta||_inf ||v||_{B^{s+1}}.
      rhs = grad_sup_vector(v) * besov_norm(theta, part, BesovIndex{s, p, q, true}) +
            lp_norm(theta, Lp::inf) * besov_norm(v, part, BesovIndex{s + 1.0, p, q, true});
    }
    if (rhs == 0.0) continue;

    const double lhs = weighted_block_sum(part, s, q, [&](int j) {
      SpectralScalarField commutator =
          advect(v, lp_block(theta, part, j), true) - lp_block(vtheta, part, j);
      return lp_norm(commutator, p);
    });
    ratios.push_back(lhs / rhs);
  }

  const char* tag = variant == CommutatorVariant::transport
                        ? "commutator-transport"
                        : (variant == CommutatorVariant::low_high ? "commutator-lowhigh"
                                                                  : "commutator-loworder");
  return summarize(tag, std::move(ratios), seed);
}

EmpiricalConstantReport verify_product_estimate(const DyadicPartition& part, int ensemble_size,
                                                double s, const ProductSplit& split,
                                                std::uint64_t seed) {
  if (ensemble_size < 1) throw std::invalid_argument("verify_product_estimate: empty ensemble");
  const double tol = 1e-12;
  if (std::abs(reciprocal(split.p) - reciprocal(split.p1) - reciprocal(split.p2)) > tol ||
      std::abs(reciprocal(split.p) - reciprocal(split.r1) - reciprocal(split.r2)) > tol) {
    throw std::invalid_argument("verify_product_estimate: invalid Holder split");
  }
  const Grid& grid = part.grid();
  const int band_hi = grid.n() / 3;

  std::vector<double> ratios;
  for (int i = 0; i < ensemble_size; ++i) {
    SpectralScalarField f = random_scalar_band(grid, 1, band_hi, seed + kSeedStride * (2 * i + 1));
    SpectralScalarField g = random_scalar_band(grid, 1, band_hi, seed + kSeedStride * (2 * i + 2));
    const SpectralScalarField fg = pointwise_product(f, g, true);
    const double lhs = besov_norm(fg, part, BesovIndex{s, split.p, Lp::one, true});
    const double rhs =
        besov_norm(f, part, BesovIndex{s, split.p1, Lp::one, true}) * lp_norm(g, split.p2) +
        besov_norm(g, part, BesovIndex{s, split.r1, Lp::one, true}) * lp_norm(f, split.r2);
    if (rhs == 0.0) continue;
    ratios.push_back(lhs / rhs);
  }
  return summarize("product-estimate", std::move(ratios), seed);
}

}  // namespace reulab
