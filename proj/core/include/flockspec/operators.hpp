#pragma once

#include "flockspec/transform.hpp"

namespace flockspec {

// (-Laplace)^(alpha/2): multiplier |k|^alpha (Euclidean |k|), zero on the mean
// mode and on Nyquist rows. Requires 0 < alpha < 2.
ScalarField fractional_laplacian(const ScalarField& f, double alpha);
void fractional_laplacian_inplace(SpectralField& F, double alpha);

// d/dx_axis: multiplier i*k_axis, Nyquist zeroed.
ScalarField partial_derivative(const ScalarField& f, int axis);
void partial_derivative_inplace(SpectralField& F, int axis);

// Laplacian: multiplier -|k|^2, Nyquist zeroed (viscous term only).
void laplacian_inplace(SpectralField& F);

// 2/3-rule dealiasing: zero every coefficient with any |k_axis| > N/3.
// Idempotent; sets the dealiased flag.
void dealias(SpectralField& F);
ScalarField dealias_product(const ScalarField& a, const ScalarField& b);

// f(. + offset), exact for band-limited fields (phase factor exp(i k.offset);
// Nyquist zeroed to keep the result real).
ScalarField spectral_shift(const ScalarField& f, const std::array<double, 2>& offset);

// sum_k w(|k|^2) |c_k|^2 style reductions used by the Sobolev diagnostics.
double sobolev_sum(const SpectralField& F, double s);    // (1+|k|^2)^s
double homogeneous_sum(const SpectralField& F, double s); // |k|^(2s), k != 0

}  // namespace flockspec
