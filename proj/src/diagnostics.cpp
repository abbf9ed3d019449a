#include "reulab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "reulab/csv.hpp"
#include "reulab/fft.hpp"
#include "reulab/spectral_ops.hpp"

namespace reulab {

std::vector<BesovIndex> default_tracked_indices() {
  return {
      BesovIndex{2.5, Lp::two, Lp::one, false},
      BesovIndex{3.5, Lp::two, Lp::one, false},
      BesovIndex{2.5, Lp::two, Lp::one, true},
      BesovIndex{1.0, Lp::inf, Lp::one, false},
  };
}

DiagnosticsSeries::DiagnosticsSeries() : DiagnosticsSeries(default_tracked_indices()) {}

DiagnosticsSeries::DiagnosticsSeries(std::vector<BesovIndex> tracked)
    : tracked_(std::move(tracked)), besov_(tracked_.size()) {}

void DiagnosticsSeries::append_sample(double t, double energy, double grad_sup,
                                      const std::vector<double>& besov_values) {
  if (!times_.empty() && !(t > times_.back())) {
    throw std::invalid_argument("DiagnosticsSeries: non-increasing sample time");
  }
  if (besov_values.size() != tracked_.size()) {
    throw std::invalid_argument("DiagnosticsSeries: besov value count mismatch");
  }
  if (times_.empty()) {
    bkm_.push_back(0.0);
  } else {
    bkm_.push_back(bkm_.back() + 0.5 * (t - times_.back()) * (grad_sup_.back() + grad_sup));
  }
  times_.push_back(t);
  energy_.push_back(energy);
  grad_sup_.push_back(grad_sup);
  for (std::size_t i = 0; i < tracked_.size(); ++i) besov_[i].push_back(besov_values[i]);
}

namespace {
const char* kCsvHeader[] = {"t",         "energy",    "grad_sup",       "U",
                            "besov_5_2", "besov_7_2", "hom_besov_5_2", "besov_inf_1"};
}

void DiagnosticsSeries::write_csv(const std::string& path) const {
  csv::Writer w(path);
  std::vector<std::string> header(kCsvHeader, kCsvHeader + 4);
  if (tracked_.size() == 4) {
    header.insert(header.end(), kCsvHeader + 4, kCsvHeader + 8);
  } else {
    for (std::size_t i = 0; i < tracked_.size(); ++i) header.push_back("besov_" + std::to_string(i));
  }
  w.write_header(header);
  for (std::size_t r = 0; r < times_.size(); ++r) {
    std::vector<double> row = {times_[r], energy_[r], grad_sup_[r], bkm_[r]};
    for (const auto& series : besov_) row.push_back(series[r]);
    w.write_row_doubles(row);
  }
}

void DiagnosticsSeries::write_besov_csv(const std::string& path) const {
  csv::Writer w(path);
  w.write_header({"time", "s", "p", "q", "homogeneous", "value"});
  for (std::size_t r = 0; r < times_.size(); ++r) {
    for (std::size_t b = 0; b < tracked_.size(); ++b) {
      const BesovIndex& idx = tracked_[b];
      w.write_row({csv::format_double(times_[r]), csv::format_double(idx.s), lp_name(idx.p),
                   lp_name(idx.q), idx.homogeneous ? "1" : "0",
                   csv::format_double(besov_[b][r])});
    }
  }
}

DiagnosticsSeries DiagnosticsSeries::read_csv(const std::string& path) {
  const csv::Table table = csv::read(path);
  if (table.rows.empty()) throw std::runtime_error("diagnostics: no samples in " + path);
  const std::size_t ct = table.column("t");
  const std::size_t ce = table.column("energy");
  const std::size_t cg = table.column("grad_sup");
  const std::size_t cu = table.column("U");

  DiagnosticsSeries series;
  std::vector<std::size_t> bc;
  for (std::size_t i = 4; i < 8; ++i) bc.push_back(table.column(kCsvHeader[i]));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<double> besov;
    for (std::size_t c : bc) besov.push_back(csv::parse_double(table, r, c));
    series.append_sample(csv::parse_double(table, r, ct), csv::parse_double(table, r, ce),
                         csv::parse_double(table, r, cg), besov);
    // Re-derived U must agree with the stored column.
    const double stored_u = csv::parse_double(table, r, cu);
    const double rebuilt = series.bkm_.back();
    const double scale = std::max(1.0, std::abs(stored_u));
    if (std::abs(stored_u - rebuilt) > 1e-9 * scale) {
      throw std::runtime_error("diagnostics: U column inconsistent at data row " +
                               std::to_string(r + 1));
    }
  }
  return series;
}

void bkm_update(DiagnosticsSeries& series, double t, const SpectralVectorField& u,
                const DyadicPartition& part) {
  std::vector<double> besov;
  besov.reserve(series.tracked_indices().size());
  for (const BesovIndex& idx : series.tracked_indices()) besov.push_back(besov_norm(u, part, idx));

  // grad_sup: max over grid and components of all nine d_k u_j.
  double grad = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const std::vector<double> d = to_physical(partial(u[j], k));
      for (double v : d) grad = std::max(grad, std::abs(v));
    }
  }
  series.append_sample(t, l2_norm(u), grad, besov);
}

std::vector<double> gronwall_envelope(const DiagnosticsSeries& series, double u0_norm, double c3,
                                      double c4) {
  if (!(c3 > 0.0) || !(c4 > 0.0)) {
    throw std::invalid_argument("gronwall_envelope: c3 and c4 must be positive");
  }
  std::vector<double> env;
  env.reserve(series.size());
  for (double u : series.bkm_integral()) env.push_back(c3 * u0_norm * std::exp(c4 * u));
  return env;
}

GronwallFit fit_gronwall(const DiagnosticsSeries& series, double u0_norm) {
  if (series.empty()) throw std::invalid_argument("fit_gronwall: empty series");
  const std::vector<double>& measured = series.besov_series(0);  // B^{5/2}_{2,1}
  const std::vector<double>& U = series.bkm_integral();

  GronwallFit fit;
  fit.c3 = u0_norm > 0.0 ? measured.front() / u0_norm : 0.0;
  fit.c4 = 0.0;
  bool feasible = true;
  for (std::size_t i = 1; i < measured.size(); ++i) {
    const double base = fit.c3 * u0_norm;
    if (measured[i] <= base) continue;
    if (U[i] <= 0.0) {
      feasible = false;
      continue;
    }
    fit.c4 = std::max(fit.c4, std::log(measured[i] / base) / U[i]);
  }
  fit.satisfied = feasible;
  fit.min_residual = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double env = fit.c3 * u0_norm * std::exp(fit.c4 * U[i]);
    fit.min_residual = std::min(fit.min_residual, env - measured[i]);
  }
  return fit;
}

namespace {

struct LineFit {
  double slope, intercept, max_residual;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit{};
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.max_residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
  }
  return fit;
}

double sup_norm_of_propagated(const SpectralVectorField& g, double omega, double t) {
  SpectralVectorField moved(g.grid());
  const Grid& grid = g.grid();
  const int n = grid.n();
  for (int i = 0; i < n; ++i) {
    const double x1 = grid.xi(i);
    for (int j = 0; j < n; ++j) {
      const double x2 = grid.xi(j);
      for (int k = 0; k < n; ++k) {
        const double x3 = grid.xi(k);
        const double norm = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
        if (norm == 0.0) continue;
        const Complex phase = std::polar(1.0, omega * t * x3 / norm);
        const std::size_t m = grid.index(i, j, k);
        for (int c = 0; c < 3; ++c) moved[c].coeffs()[m] = phase * g[c].coeffs()[m];
      }
    }
  }
  return lp_norm(moved, Lp::inf);
}

}  // namespace

StrichartzReport strichartz_decay(const SpectralVectorField& f, const std::vector<double>& omegas,
                                  double r, int shell, double t_end,
                                  const DyadicPartition& part) {
  if (omegas.size() < 4) {
    throw std::invalid_argument("strichartz_decay: need at least 4 omega values");
  }
  if (!(r > 2.0) || !std::isfinite(r)) {
    throw std::invalid_argument("strichartz_decay: r must lie in (2, inf)");
  }
  if (!(t_end > 0.0)) throw std::invalid_argument("strichartz_decay: t_end must be positive");
  for (double w : omegas) {
    if (w == 0.0) throw std::invalid_argument("strichartz_decay: omega must be nonzero");
  }

  SpectralVectorField g = lp_block(f, part, shell);
  const double gmax = g.max_abs_coeff();
  if (gmax == 0.0) {
    throw std::invalid_argument("strichartz_decay: field vanishes on shell " +
                                std::to_string(shell));
  }

  // Fields supported on the vertical axis see a single phase e^{i Omega t};
  // no stationary-phase decay exists there, so reject them.
  {
    const Grid& grid = g.grid();
    const int n = grid.n();
    bool off_axis = false;
    for (int i = 0; i < n && !off_axis; ++i) {
      for (int j = 0; j < n && !off_axis; ++j) {
        for (int k = 0; k < n && !off_axis; ++k) {
          const std::size_t m = grid.index(i, j, k);
          double mag = 0.0;
          for (int c = 0; c < 3; ++c) mag = std::max(mag, std::abs(g[c].coeffs()[m]));
          if (mag > 1e-12 * gmax && (grid.wavenumber(i) != 0 || grid.wavenumber(j) != 0)) {
            off_axis = true;
          }
        }
      }
    }
    if (!off_axis) {
      throw std::invalid_argument(
          "strichartz_decay: field supported on the vertical axis is single-phase "
          "(no dispersive decay); choose generic shell data");
    }
  }

  StrichartzReport report;
  report.r = r;
  report.shell = shell;
  report.t_end = t_end;
  report.omegas = omegas;

  std::vector<double> m_half, m_double;
  for (double omega_signed : omegas) {
    const double omega = std::abs(omega_signed);
    // Resolve the fastest phase (period 2 pi / Omega) and the horizon; the
    // integral runs to 2 t_end so halved/doubled horizons come for free.
    const double dt_q = std::min(t_end / 64.0, 2.0 * M_PI / omega / 16.0);
    const long n_half = std::lround(std::ceil(0.5 * t_end / dt_q));
    const double dt_half = 0.5 * t_end / n_half;

    double integral = 0.0;
    double prev = std::pow(sup_norm_of_propagated(g, omega_signed, 0.0), r);
    double m_at_half = 0.0, m_at_full = 0.0;
    for (long step = 1; step <= 4 * n_half; ++step) {
      const double t = step * dt_half;
      const double cur = std::pow(sup_norm_of_propagated(g, omega_signed, t), r);
      integral += 0.5 * dt_half * (prev + cur);
      prev = cur;
      if (step == n_half) m_at_half = std::pow(integral, 1.0 / r);
      if (step == 2 * n_half) m_at_full = std::pow(integral, 1.0 / r);
    }
    const double m_at_double = std::pow(integral, 1.0 / r);
    report.decay_norms.push_back(m_at_full);
    m_half.push_back(m_at_half);
    m_double.push_back(m_at_double);
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    lx.push_back(std::log(std::abs(omegas[i])));
    ly.push_back(std::log(report.decay_norms[i]));
  }
  const LineFit fit = fit_line(lx, ly);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.max_fit_residual = fit.max_residual;

  report.tail_change = 0.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const double base = report.decay_norms[i];
    report.tail_change = std::max(report.tail_change, std::abs(m_half[i] - base) / base);
    report.tail_change = std::max(report.tail_change, std::abs(m_double[i] - base) / base);
  }
  return report;
}

void write_strichartz_csv(const std::string& path, const StrichartzReport& report) {
  csv::Writer w(path);
  w.write_header({"omega", "M", "log_fit_residual"});
  for (std::size_t i = 0; i < report.omegas.size(); ++i) {
    const double res = std::log(report.decay_norms[i]) -
                       (report.slope * std::log(std::abs(report.omegas[i])) + report.intercept);
    w.write_row_doubles({report.omegas[i], report.decay_norms[i], res});
  }
}

std::vector<SweepRow> rotation_sweep(const SpectralVectorField& u0,
                                     const std::vector<double>& omegas, const SolverConfig& cfg,
                                     double u_threshold, int threads) {
  std::vector<SweepRow> rows(omegas.size());
  const auto run_one = [&](std::size_t idx) {
    SolverConfig local = cfg;
    local.omega = omegas[idx];
    local.delta = 0.0;
    local.scheme = Scheme::ifrk4;
    SweepRow row;
    row.omega = omegas[idx];
    try {
      RunResult rr = run(local, u0);
      row.series = rr.series;
      row.aborted = rr.aborted;
      row.note = rr.abort_reason;
      row.u_end = rr.series.final_bkm();
      row.t_hit = rr.series.times().back();
      for (std::size_t i = 0; i < rr.series.size(); ++i) {
        if (rr.series.bkm_integral()[i] > u_threshold) {
          row.t_hit = rr.series.times()[i];
          row.hit = true;
          break;
        }
      }
    } catch (const std::exception& e) {
      row.aborted = true;
      row.note = e.what();
    }
    rows[idx] = std::move(row);
  };

  if (threads <= 1 || omegas.size() <= 1) {
    for (std::size_t i = 0; i < omegas.size(); ++i) run_one(i);
    return rows;
  }
  std::vector<std::thread> pool;
  std::size_t next = 0;
  const std::size_t width = std::min<std::size_t>(threads, omegas.size());
  std::mutex mu;
  for (std::size_t t = 0; t < width; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        std::size_t idx;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= omegas.size()) return;
          idx = next++;
        }
        run_one(idx);
      }
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace reulab
