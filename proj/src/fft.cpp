#include "reulab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace reulab {
namespace detail {

namespace {

// Plans are reused per grid size. Creation is serialized (FFTW requirement);
// execution through the new-array interface is thread-safe. FFTW_UNALIGNED
// keeps the plans valid for arbitrary caller buffers, FFTW_ESTIMATE keeps
// planning deterministic.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

PlanPair get_plans(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<Complex> scratch(static_cast<std::size_t>(n) * n * n);
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair plans;
  plans.forward =
      fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.backward =
      fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans.forward || !plans.backward) {
    throw std::runtime_error("fftw planning failed for n=" + std::to_string(n));
  }
  cache[n] = plans;
  return plans;
}

}  // namespace

void fft3_inplace(int n, Complex* data, int sign) {
  PlanPair plans = get_plans(n);
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(sign < 0 ? plans.forward : plans.backward, buf, buf);
}

}  // namespace detail

SpectralScalarField to_spectral(const Grid& grid, const std::vector<double>& values) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("to_spectral: expected " + std::to_string(grid.size()) +
                                " values, got " + std::to_string(values.size()));
  }
  std::vector<Complex> coeffs(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) coeffs[i] = Complex{values[i], 0.0};
  detail::fft3_inplace(grid.n(), coeffs.data(), -1);

  const double inv_n3 = 1.0 / static_cast<double>(grid.size());
  for (Complex& c : coeffs) c *= inv_n3;

  // Zero the Nyquist rows: they carry no usable sign information for
  // derivatives and break Hermitian pairing.
  const int n = grid.n();
  const int nyq = n / 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == nyq || j == nyq || k == nyq) {
          coeffs[grid.index(i, j, k)] = Complex{0.0, 0.0};
        }
      }
    }
  }
  return SpectralScalarField(grid, std::move(coeffs));
}

std::vector<double> to_physical(const SpectralScalarField& f) {
  std::vector<Complex> work = f.coeffs();
  detail::fft3_inplace(f.grid().n(), work.data(), +1);
  std::vector<double> values(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) values[i] = work[i].real();
  return values;
}

SpectralVectorField to_spectral(const Grid& grid,
                                const std::array<std::vector<double>, 3>& values) {
  return SpectralVectorField(to_spectral(grid, values[0]), to_spectral(grid, values[1]),
                             to_spectral(grid, values[2]));
}

std::array<std::vector<double>, 3> to_physical(const SpectralVectorField& v) {
  return {to_physical(v[0]), to_physical(v[1]), to_physical(v[2])};
}

}  // namespace reulab
