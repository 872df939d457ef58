#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace flockspec {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform grid on the periodic torus [0, 2pi)^dim, dim in {1, 2}, N points
// per axis (power of two). Wavenumbers per axis run over {-N/2, ..., N/2-1}.
struct TorusGrid {
  int dim = 1;
  int n = 0;          // points per axis
  double h = 0.0;     // spacing 2pi/N
  std::size_t size = 0;  // N^dim

  // storage index <-> multi-index, row-major (i0 slow, i1 fast)
  std::size_t flat(int i0, int i1 = 0) const {
    return static_cast<std::size_t>(i0) * (dim == 2 ? n : 1) + i1;
  }
  std::array<int, 2> unflat(std::size_t idx) const {
    if (dim == 1) return {static_cast<int>(idx), 0};
    return {static_cast<int>(idx / n), static_cast<int>(idx % n)};
  }
  std::array<double, 2> point(std::size_t idx) const {
    auto mi = unflat(idx);
    return {h * mi[0], h * mi[1]};
  }
  // signed wavenumber of storage slot i along one axis
  int wavenumber(int i) const { return i < n / 2 ? i : i - n; }
  bool is_nyquist(int k) const { return k == -n / 2; }
  // largest retained |k| under the 2/3 rule (N is a power of two, so 3*cut < N
  // and dealiased triple products are alias-free on the grid quadrature)
  int dealias_cut() const { return n / 3; }
};

TorusGrid make_grid(int dim, int n);

}  // namespace flockspec
