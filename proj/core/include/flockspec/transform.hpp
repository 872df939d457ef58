#pragma once

#include "flockspec/field.hpp"

namespace flockspec {

// Forward DFT with 1/N^dim normalization: coefficients are the trigonometric
// interpolant's Fourier coefficients, f(x) = sum_k c_k exp(i k.x).
SpectralField forward_transform(const ScalarField& f);

// Inverse of forward_transform; imaginary residue of the complex transform is
// dropped (inputs are Hermitian-symmetric up to roundoff for real data).
ScalarField inverse_transform(const SpectralField& F);

// sum_k |c_k|^2 equals the grid mean of f^2 (Parseval under the 1/N^dim
// convention).
double spectral_energy(const SpectralField& F);

}  // namespace flockspec
