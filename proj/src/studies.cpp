#include "reulab/studies.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "reulab/initial_data.hpp"
#include "reulab/rotation.hpp"
#include "reulab/spectral_ops.hpp"

namespace reulab {

namespace {

SpectralVectorField prepare(const SpectralVectorField& u0, const SolverConfig& cfg) {
  SpectralVectorField u = leray_project(u0);
  zero_mean(u);
  if (cfg.dealias) u = dealias(u);
  return u;
}

// Advances two states in lockstep and reports sup_t of the L2 difference.
double lockstep_sup_gap(const SpectralVectorField& u0, SolverConfig cfg_a, SolverConfig cfg_b) {
  SpectralVectorField a = prepare(u0, cfg_a);
  SpectralVectorField b = prepare(u0, cfg_b);
  double sup = 0.0;
  for (double dt : step_schedule(cfg_a.t_end, cfg_a.dt)) {
    cfg_a.dt = dt;
    cfg_b.dt = dt;
    a = step_ifrk4(a, cfg_a);
    b = step_ifrk4(b, cfg_b);
    sup = std::max(sup, l2_norm(a - b));
  }
  return sup;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

DeltaStudyResult delta_convergence_study(const SpectralVectorField& u0,
                                         const std::vector<double>& deltas,
                                         const SolverConfig& cfg, int threads) {
  if (deltas.empty()) throw std::invalid_argument("delta_convergence_study: empty delta list");
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("delta_convergence_study: deltas must be decreasing");
    }
  }
  cfg.validate();

  DeltaStudyResult result;
  result.rows.resize(deltas.size());
  const auto run_pair = [&](std::size_t i) {
    SolverConfig ca = cfg;
    ca.delta = deltas[i];
    SolverConfig cb = cfg;
    cb.delta = deltas[i] / 2.0;
    result.rows[i] = DeltaGapRow{deltas[i], lockstep_sup_gap(u0, ca, cb)};
  };

  if (threads <= 1 || deltas.size() <= 1) {
    for (std::size_t i = 0; i < deltas.size(); ++i) run_pair(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    const std::size_t width = std::min<std::size_t>(threads, deltas.size());
    for (std::size_t t = 0; t < width; ++t) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t idx;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= deltas.size()) return;
            idx = next++;
          }
          run_pair(idx);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> lx, ly;
  for (const DeltaGapRow& row : result.rows) {
    if (row.sup_gap > 0.0) {
      lx.push_back(std::log(row.delta));
      ly.push_back(std::log(row.sup_gap));
    }
  }
  result.slope = lx.size() >= 2 ? fit_slope(lx, ly) : 0.0;
  return result;
}

UniquenessReport uniqueness_probe(const SpectralVectorField& u0, const SolverConfig& cfg,
                                  double perturbation_scale, std::uint64_t seed) {
  cfg.validate();
  if (perturbation_scale < 0.0) {
    throw std::invalid_argument("uniqueness_probe: negative perturbation scale");
  }

  SpectralVectorField base = prepare(u0, cfg);
  SpectralVectorField pert = base;
  if (perturbation_scale > 0.0) {
    SpectralVectorField noise =
        random_solenoidal_band(base.grid(), 1, std::max(2, base.grid().n() / 4), seed);
    noise *= perturbation_scale / l2_norm(noise);
    pert += noise;
    pert = prepare(pert, cfg);
  }

  UniquenessReport report;
  report.initial_gap = l2_norm(base - pert);
  const double gap0 = report.initial_gap > 0.0 ? report.initial_gap : 1.0;

  report.times.push_back(0.0);
  report.growth.push_back(report.initial_gap / gap0);

  std::vector<double> bkm{0.0};
  double prev_grad = measure_sups(base).grad_max;
  double t = 0.0;
  SolverConfig step_cfg = cfg;
  for (double dt : step_schedule(cfg.t_end, cfg.dt)) {
    step_cfg.dt = dt;
    base = step_ifrk4(base, step_cfg);
    pert = step_ifrk4(pert, step_cfg);
    const double grad_now = measure_sups(base).grad_max;
    bkm.push_back(bkm.back() + 0.5 * dt * (prev_grad + grad_now));
    prev_grad = grad_now;
    t += dt;
    report.times.push_back(t);
    report.growth.push_back(l2_norm(base - pert) / gap0);
  }

  // Smallest c with growth(t) <= exp(c U(t)) along the whole run.
  report.c_fit = 0.0;
  for (std::size_t i = 1; i < report.growth.size(); ++i) {
    if (report.growth[i] > 1.0 && bkm[i] > 0.0) {
      report.c_fit = std::max(report.c_fit, std::log(report.growth[i]) / bkm[i]);
    }
  }
  for (double u : bkm) report.envelope.push_back(std::exp(report.c_fit * u));
  report.growth_factor = report.growth.back();
  return report;
}

}  // namespace reulab
