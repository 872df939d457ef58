#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "flockspec/grid.hpp"

namespace flockspec {

// Real-valued samples on the grid, length grid.size.
struct ScalarField {
  TorusGrid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g) : grid(g), values(g.size, 0.0) {}
};

// Fourier coefficients c_k, k per axis in {-N/2,...,N/2-1}, stored at index
// k mod N. Hermitian-symmetric for real fields. `dealiased` asserts that all
// coefficients with any |k_axis| > N/3 vanish.
struct SpectralField {
  TorusGrid grid;
  std::vector<std::complex<double>> coeff;
  bool dealiased = false;

  SpectralField() = default;
  explicit SpectralField(const TorusGrid& g) : grid(g), coeff(g.size) {}
};

ScalarField make_field(const TorusGrid& g,
                       const std::function<double(double, double)>& f);

double field_min(const ScalarField& f);
double field_max(const ScalarField& f);
double field_mean(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

}  // namespace flockspec
