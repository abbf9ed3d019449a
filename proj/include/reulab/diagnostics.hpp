#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reulab/diagnostics_series.hpp"
#include "reulab/solver.hpp"

namespace reulab {

// Envelope c3 * u0_norm * exp(c4 * U(t)) evaluated along the series.
std::vector<double> gronwall_envelope(const DiagnosticsSeries& series, double u0_norm, double c3,
                                      double c4);

struct GronwallFit {
  double c3 = 0.0;
  double c4 = 0.0;
  bool satisfied = false;  // measured B^{5/2}_{2,1} stays below the envelope
  double min_residual = 0.0;
};

// Smallest (c3, c4) for which the measured B^{5/2}_{2,1} series stays below
// the envelope: c3 is pinned at t=0, then c4 = max_t log(m(t)/(c3 u0))/U(t).
GronwallFit fit_gronwall(const DiagnosticsSeries& series, double u0_norm);

struct StrichartzReport {
  double r = 4.0;
  int shell = 0;
  double t_end = 0.0;
  std::vector<double> omegas;
  std::vector<double> decay_norms;  // M(Omega)
  double slope = 0.0;               // fitted d log M / d log |Omega|
  double intercept = 0.0;
  double max_fit_residual = 0.0;    // in log M
  double tail_change = 0.0;         // max rel. change of M when t_end is halved/doubled
};

// Measures M(Omega) = (int_0^{t_end} ||Delta_j e^{i Omega t D3/|D|} f||_inf^r dt)^{1/r}
// by quadrature for each Omega and fits log M against log |Omega|.
// Rejects fewer than 4 omegas, r outside (2, inf), and fields supported only
// on the vertical axis (single-phase, no decay).
StrichartzReport strichartz_decay(const SpectralVectorField& f, const std::vector<double>& omegas,
                                  double r, int shell, double t_end,
                                  const DyadicPartition& part);

void write_strichartz_csv(const std::string& path, const StrichartzReport& report);

struct SweepRow {
  double omega = 0.0;
  double t_hit = 0.0;   // first time U exceeds the threshold (t_end if never)
  bool hit = false;
  double u_end = 0.0;   // U at the end of the run
  bool aborted = false;
  std::string note;
  DiagnosticsSeries series;
};

// Runs the delta = 0 solver for each Omega from the same data and reports the
// BKM functional against the threshold.
std::vector<SweepRow> rotation_sweep(const SpectralVectorField& u0,
                                     const std::vector<double>& omegas, const SolverConfig& cfg,
                                     double u_threshold, int threads = 1);

}  // namespace reulab
