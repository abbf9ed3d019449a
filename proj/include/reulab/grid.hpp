#pragma once

#include <cstddef>
#include <vector>

namespace reulab {

// Cubic periodic grid [0,L)^3 with n collocation points per axis.
// Wavenumbers follow standard FFT ordering: 0, 1, ..., n/2, -(n/2-1), ..., -1.
// The n/2 entry is the Nyquist row; it breaks Hermitian pairing under
// differentiation, so transforms zero it on input.
class Grid {
 public:
  Grid(int n, double box_size);

  int n() const { return n_; }
  double box_size() const { return box_size_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  // Grid spacing L/n.
  double dx() const { return box_size_ / n_; }

  // Signed integer wavenumber of 1D index i in [0,n).
  int wavenumber(int i) const { return wavenumbers_[static_cast<std::size_t>(i)]; }
  // Physical frequency 2*pi*k/L of 1D index i.
  double xi(int i) const { return xi_[static_cast<std::size_t>(i)]; }
  bool is_nyquist(int i) const { return i == n_ / 2; }

  // 1D index of the conjugate wavenumber -k.
  int conj_index(int i) const { return i == 0 ? 0 : n_ - i; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  // Largest |xi| on the grid (at the Nyquist corner).
  double max_frequency() const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && box_size_ == other.box_size_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int n_;
  double box_size_;
  std::vector<int> wavenumbers_;
  std::vector<double> xi_;
};

}  // namespace reulab
