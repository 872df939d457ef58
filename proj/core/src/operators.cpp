#include "flockspec/operators.hpp"

#include <cmath>
#include <string>

namespace flockspec {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ValidationError("alpha = " + std::to_string(alpha) +
                          " outside admissible interval (0, 2)");
}

// Applies a real multiplier m(k0, k1); Nyquist rows are zeroed by every
// operator here so real fields stay real and adjointness is exact.
template <typename M>
void apply_multiplier(SpectralField& F, M&& m) {
  const TorusGrid& g = F.grid;
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      int k = g.wavenumber(i);
      if (g.is_nyquist(k)) {
        F.coeff[i] = 0.0;
      } else {
        F.coeff[i] *= m(k, 0);
      }
    }
  } else {
    for (int i0 = 0; i0 < g.n; ++i0) {
      int k0 = g.wavenumber(i0);
      for (int i1 = 0; i1 < g.n; ++i1) {
        int k1 = g.wavenumber(i1);
        std::size_t idx = g.flat(i0, i1);
        if (g.is_nyquist(k0) || g.is_nyquist(k1)) {
          F.coeff[idx] = 0.0;
        } else {
          F.coeff[idx] *= m(k0, k1);
        }
      }
    }
  }
}

}  // namespace

void fractional_laplacian_inplace(SpectralField& F, double alpha) {
  check_alpha(alpha);
  apply_multiplier(F, [alpha](int k0, int k1) {
    double k2 = static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1;
    return k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * alpha);
  });
}

ScalarField fractional_laplacian(const ScalarField& f, double alpha) {
  SpectralField F = forward_transform(f);
  fractional_laplacian_inplace(F, alpha);
  return inverse_transform(F);
}

void partial_derivative_inplace(SpectralField& F, int axis) {
  if (axis < 0 || axis >= F.grid.dim)
    throw ValidationError("derivative axis " + std::to_string(axis) +
                          " out of range for dim " + std::to_string(F.grid.dim));
  const TorusGrid& g = F.grid;
  const std::complex<double> I(0.0, 1.0);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      int k = g.wavenumber(i);
      F.coeff[i] = g.is_nyquist(k) ? 0.0 : F.coeff[i] * (I * static_cast<double>(k));
    }
  } else {
    for (int i0 = 0; i0 < g.n; ++i0) {
      int k0 = g.wavenumber(i0);
      for (int i1 = 0; i1 < g.n; ++i1) {
        int k1 = g.wavenumber(i1);
        std::size_t idx = g.flat(i0, i1);
        if (g.is_nyquist(k0) || g.is_nyquist(k1)) {
          F.coeff[idx] = 0.0;
        } else {
          F.coeff[idx] *= I * static_cast<double>(axis == 0 ? k0 : k1);
        }
      }
    }
  }
}

ScalarField partial_derivative(const ScalarField& f, int axis) {
  SpectralField F = forward_transform(f);
  partial_derivative_inplace(F, axis);
  return inverse_transform(F);
}

void laplacian_inplace(SpectralField& F) {
  apply_multiplier(F, [](int k0, int k1) {
    return -(static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1);
  });
}

void dealias(SpectralField& F) {
  const TorusGrid& g = F.grid;
  const int cut = g.dealias_cut();
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i)
      if (std::abs(g.wavenumber(i)) > cut) F.coeff[i] = 0.0;
  } else {
    for (int i0 = 0; i0 < g.n; ++i0) {
      int k0 = g.wavenumber(i0);
      for (int i1 = 0; i1 < g.n; ++i1) {
        if (std::abs(k0) > cut || std::abs(g.wavenumber(i1)) > cut)
          F.coeff[g.flat(i0, i1)] = 0.0;
      }
    }
  }
  F.dealiased = true;
}

ScalarField dealias_product(const ScalarField& a, const ScalarField& b) {
  ScalarField p(a.grid);
  for (std::size_t i = 0; i < a.grid.size; ++i) p.values[i] = a.values[i] * b.values[i];
  SpectralField P = forward_transform(p);
  dealias(P);
  return inverse_transform(P);
}

ScalarField spectral_shift(const ScalarField& f, const std::array<double, 2>& offset) {
  SpectralField F = forward_transform(f);
  const TorusGrid& g = F.grid;
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) {
      int k = g.wavenumber(i);
      if (g.is_nyquist(k)) {
        F.coeff[i] = 0.0;
      } else {
        F.coeff[i] *= std::polar(1.0, k * offset[0]);
      }
    }
  } else {
    for (int i0 = 0; i0 < g.n; ++i0) {
      int k0 = g.wavenumber(i0);
      for (int i1 = 0; i1 < g.n; ++i1) {
        int k1 = g.wavenumber(i1);
        std::size_t idx = g.flat(i0, i1);
        if (g.is_nyquist(k0) || g.is_nyquist(k1)) {
          F.coeff[idx] = 0.0;
        } else {
          F.coeff[idx] *= std::polar(1.0, k0 * offset[0] + k1 * offset[1]);
        }
      }
    }
  }
  return inverse_transform(F);
}

double sobolev_sum(const SpectralField& F, double s) {
  const TorusGrid& g = F.grid;
  double acc = 0.0;
  for (std::size_t idx = 0; idx < g.size; ++idx) {
    auto mi = g.unflat(idx);
    int k0 = g.wavenumber(mi[0]);
    int k1 = g.dim == 2 ? g.wavenumber(mi[1]) : 0;
    double k2 = static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1;
    acc += std::pow(1.0 + k2, s) * std::norm(F.coeff[idx]);
  }
  return acc;
}

double homogeneous_sum(const SpectralField& F, double s) {
  const TorusGrid& g = F.grid;
  double acc = 0.0;
  for (std::size_t idx = 0; idx < g.size; ++idx) {
    auto mi = g.unflat(idx);
    int k0 = g.wavenumber(mi[0]);
    int k1 = g.dim == 2 ? g.wavenumber(mi[1]) : 0;
    double k2 = static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1;
    if (k2 > 0.0) acc += std::pow(k2, s) * std::norm(F.coeff[idx]);
  }
  return acc;
}

}  // namespace flockspec
