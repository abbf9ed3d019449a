#pragma once

#include <string>
#include <vector>

#include "reulab/field.hpp"
#include "reulab/littlewood_paley.hpp"

namespace reulab {

// Per-run observable record: energy, sup of the velocity gradient, the
// running integral U(t) of grad_sup (trapezoid rule), and tracked Besov
// norms. U is nondecreasing with U(0) = 0.
class DiagnosticsSeries {
 public:
  DiagnosticsSeries();
  explicit DiagnosticsSeries(std::vector<BesovIndex> tracked);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& energy() const { return energy_; }
  const std::vector<double>& grad_sup() const { return grad_sup_; }
  const std::vector<double>& bkm_integral() const { return bkm_; }
  const std::vector<BesovIndex>& tracked_indices() const { return tracked_; }
  const std::vector<double>& besov_series(std::size_t which) const { return besov_[which]; }

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  double final_energy() const { return energy_.back(); }
  double final_bkm() const { return bkm_.back(); }

  // Appends one sample; `besov_values` must match the tracked index list.
  // Rejects non-increasing times.
  void append_sample(double t, double energy, double grad_sup,
                     const std::vector<double>& besov_values);

  // diagnostics.csv: t,energy,grad_sup,U,besov_5_2,besov_7_2,hom_besov_5_2,besov_inf_1
  void write_csv(const std::string& path) const;
  static DiagnosticsSeries read_csv(const std::string& path);

  // Long-format Besov export: one row per (time, tracked index) with columns
  // time, s, p, q, homogeneous, value.
  void write_besov_csv(const std::string& path) const;

 private:
  std::vector<BesovIndex> tracked_;
  std::vector<double> times_;
  std::vector<double> energy_;
  std::vector<double> grad_sup_;
  std::vector<double> bkm_;
  std::vector<std::vector<double>> besov_;
};

// The four norms every run tracks: B^{5/2}_{2,1}, B^{7/2}_{2,1},
// homogeneous B^{5/2}_{2,1}, B^{1}_{inf,1}.
std::vector<BesovIndex> default_tracked_indices();

// Measures energy, grad_sup and the tracked Besov norms of u at time t and
// appends them; U is extended by the trapezoid rule.
void bkm_update(DiagnosticsSeries& series, double t, const SpectralVectorField& u,
                const DyadicPartition& part);

}  // namespace reulab
