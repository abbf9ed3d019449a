#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reulab/littlewood_paley.hpp"

namespace reulab {

// Observed ratio statistics for one inequality over a random ensemble.
struct EmpiricalConstantReport {
  std::string lemma_id;
  int samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double median = 0.0;
  std::uint64_t seed = 0;
};

// CSV schema: lemma-id, sample-count, min-ratio, max-ratio, median, seed.
void write_reports_csv(const std::string& path,
                       const std::vector<EmpiricalConstantReport>& reports);

// ||D^k f||_p / (2^{jk} ||f||_p) over shell-supported random fields;
// k_order 1 uses the gradient magnitude, 2 the Laplacian.
EmpiricalConstantReport verify_bernstein(const DyadicPartition& part, int ensemble_size,
                                         int k_order, Lp p, std::uint64_t seed);

// ||e^{nu t Lap} f||_{B^{s1}} / ((1 + t^{-(s1-s0)/2}) ||f||_{B^{s0}}).
EmpiricalConstantReport verify_heat_smoothing(const DyadicPartition& part, double nu,
                                              int ensemble_size, double s0, double s1,
                                              const std::vector<double>& t_list,
                                              std::uint64_t seed);

enum class CommutatorVariant {
  transport,       // [v . grad, Delta_j] theta against grad-sup x Besov
  low_high,        // (S_{j-2} u . grad) Delta_j u - Delta_j (u . grad) u
  transport_loworder,  // s > -1 variant (unused by the solver path; off by default)
};

EmpiricalConstantReport verify_commutator(const DyadicPartition& part, int ensemble_size,
                                          double s, Lp p, Lp q, std::uint64_t seed,
                                          CommutatorVariant variant = CommutatorVariant::transport);

// Holder splits for the product estimate; all exponents in {1, 2, inf} with
// 1/p = 1/p1 + 1/p2 = 1/r1 + 1/r2.
struct ProductSplit {
  Lp p = Lp::two;
  Lp p1 = Lp::two;
  Lp p2 = Lp::inf;
  Lp r1 = Lp::two;
  Lp r2 = Lp::inf;
};

EmpiricalConstantReport verify_product_estimate(const DyadicPartition& part, int ensemble_size,
                                                double s, const ProductSplit& split,
                                                std::uint64_t seed);

}  // namespace reulab
