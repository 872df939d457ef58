#pragma once

#include <array>
#include <complex>
#include <vector>

#include "flockspec/field.hpp"

namespace flockspec {

// Bridge between the principal-value integral form and the |k|^alpha
// multiplier: c_{n,alpha} = 2^alpha Gamma((n+alpha)/2) / (pi^{n/2} |Gamma(-alpha/2)|).
// Lives only on this oracle side; the evolution code never sees it.
double normalization_constant(int dim, double alpha);

// Periodized singular kernel phi_alpha(z) = sum_{k in Z^n} |z+2pi k|^{-(n+alpha)},
// truncated to images |k|_inf <= shell_radius. Positive, even, bounded away
// from zero on the torus.
struct PeriodizedKernel {
  int dim = 1;
  double alpha = 1.0;
  int shell_radius = 20;
};

struct KernelValue {
  double value = 0.0;
  double tail_bound = 0.0;  // rigorous bound on the discarded images
};

PeriodizedKernel make_kernel(int dim, double alpha, int shell_radius = 20);
KernelValue kernel_value(const PeriodizedKernel& kernel, const std::array<double, 2>& z);

// Ewald-split evaluation of the same kernel, exponentially convergent (the
// oracle integrals use this; the truncated sum above is cross-checked
// against it within its reported tail bound).
double kernel_value_accurate(int dim, double alpha, const std::array<double, 2>& z);

// Controls for the direct singular quadratures. The ball |z| < inner_radius
// is handled by exact per-mode moments of the free kernel plus a smooth
// remainder; outside the ball a geometrically graded composite
// Gauss-Legendre rule (octant-split polar in 2D) integrates directly
// evaluated increments.
struct QuadratureSpec {
  double inner_radius = 0.0;  // 0 = default 2h (then kappa_max * r0 <= 4 pi)
  int radial_panels = 24;
  int nodes_per_panel = 10;
  int angular_nodes = 0;  // Gauss nodes per octant in 2D; 0 = auto
  int shell_radius = 20;  // images per truncated kernel_value
};

// Trigonometric interpolant of a grid field via direct O(N^2dim) DFT; the
// oracle path deliberately avoids the FFT machinery it is used to check.
struct TrigRep {
  TorusGrid grid;
  std::vector<std::array<int, 2>> modes;          // significant wavenumbers
  std::vector<std::complex<double>> coeff;        // matching coefficients
};

TrigRep trig_rep(const ScalarField& f);
double trig_eval(const TrigRep& rep, double x0, double x1 = 0.0);

// c_{n,alpha} p.v. int_T (f(x) - f(x+z)) phi_alpha(z) dz at grid point idx.
double lambda_direct(const ScalarField& f, std::size_t idx, double alpha,
                     const QuadratureSpec& quad = {});

// c_{n,alpha} p.v. int_T (u(x+z) - u(x)) rho(x+z) phi_alpha(z) dz.
double commutator_direct(const ScalarField& u, const ScalarField& rho,
                         std::size_t idx, double alpha,
                         const QuadratureSpec& quad = {});

// c_{n,alpha} int_T |g(x+z) - g(x)|^2 phi_alpha(z) dz for a vector field g.
double d_alpha_direct(const std::vector<ScalarField>& g, std::size_t idx,
                      double alpha, const QuadratureSpec& quad = {});

// Spectral assembly of the dissipation field via the pointwise identity
// D_alpha(grad f) = 2 grad f . Lambda_alpha(grad f) - Lambda_alpha(|grad f|^2).
ScalarField d_alpha_field(const ScalarField& f, double alpha);

// min over samples and grid points of D_alpha(grad f)(x) |f|_inf^alpha /
// |grad f(x)|^{2+alpha}; points with |grad f| < 1e-8 excluded. Positivity is
// the quantitative nonlinear-max-principle shadow.
double nl_max_principle_constant(const std::vector<ScalarField>& samples, double alpha);

}  // namespace flockspec
