#include "reulab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reulab {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int n, double box_size) : n_(n), box_size_(box_size) {
  if (n < 4 || !is_power_of_two(n)) {
    throw std::invalid_argument("Grid: n must be a power of two >= 4, got " + std::to_string(n));
  }
  if (!(box_size > 0.0) || !std::isfinite(box_size)) {
    throw std::invalid_argument("Grid: box_size must be positive and finite");
  }
  wavenumbers_.resize(static_cast<std::size_t>(n));
  xi_.resize(static_cast<std::size_t>(n));
  const double scale = 2.0 * M_PI / box_size;
  for (int i = 0; i < n; ++i) {
    const int k = (i <= n / 2) ? i : i - n;
    wavenumbers_[static_cast<std::size_t>(i)] = k;
    xi_[static_cast<std::size_t>(i)] = scale * k;
  }
}

double Grid::max_frequency() const {
  const double nyq = 2.0 * M_PI / box_size_ * (n_ / 2);
  return nyq * std::sqrt(3.0);
}

}  // namespace reulab
