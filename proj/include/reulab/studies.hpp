#pragma once

#include <cstdint>
#include <vector>

#include "reulab/solver.hpp"

namespace reulab {

struct DeltaGapRow {
  double delta = 0.0;    // the larger viscosity of the compared pair
  double sup_gap = 0.0;  // sup_t || u^{delta} - u^{delta/2} ||_{L^2}
};

struct DeltaStudyResult {
  std::vector<DeltaGapRow> rows;
  double slope = 0.0;  // log-log fit of sup_gap against delta
};

// For each delta in `deltas` (decreasing), advances the delta and delta/2
// solutions in lockstep from the same data and records the sup-in-time L^2
// gap; the fitted slope is ~1 (the gap is first order in the larger
// viscosity).
DeltaStudyResult delta_convergence_study(const SpectralVectorField& u0,
                                         const std::vector<double>& deltas,
                                         const SolverConfig& cfg, int threads = 1);

struct UniquenessReport {
  std::vector<double> times;
  std::vector<double> growth;    // ||u - v||(t) / ||u - v||(0)
  std::vector<double> envelope;  // exp(c_fit * U(t)) with U from the base run
  double c_fit = 0.0;            // smallest c with growth <= exp(c U) everywhere
  double growth_factor = 0.0;    // growth at the final time
  double initial_gap = 0.0;
};

// Twin runs from u0 and u0 + perturbation (divergence-free, L^2 norm
// perturbation_scale); measures the Gronwall-type growth of the difference.
UniquenessReport uniqueness_probe(const SpectralVectorField& u0, const SolverConfig& cfg,
                                  double perturbation_scale, std::uint64_t seed);

}  // namespace reulab
