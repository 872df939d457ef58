#pragma once

#include <vector>

#include "flockspec/field.hpp"

namespace flockspec {

// Velocity layout: one component aligned with axis 0 in unidirectional mode,
// grid.dim components in vector mode.
enum class FlowMode { Unidirectional, Vector };

struct FlowState {
  TorusGrid grid;
  FlowMode mode;
  double time = 0.0;
  ScalarField rho;
  std::vector<ScalarField> u;

  FlowState(const TorusGrid& g, FlowMode m);
};

int velocity_components(const TorusGrid& g, FlowMode mode);

struct FlowParams {
  double alpha = 1.0;
  double eps = 0.0;  // viscosity; conservation checks assume eps = 0
};

// C_alpha(f, rho) = Lambda_alpha(rho) f - Lambda_alpha(rho f), products
// dealiased so the grid quadrature of triple products stays alias-free.
ScalarField alignment_commutator(const ScalarField& f, const ScalarField& rho,
                                 double alpha);

// Time derivative of (rho, u). Throws NumericalError once min(rho) falls
// below 1e-8 of its mean; the alignment term is meaningless near vacuum.
FlowState rhs(const FlowState& s, const FlowParams& p);

double vacuum_ratio(const FlowState& s);  // min(rho) / mean(rho)

// First integrals of the transport structure: e = d_1 u - Lambda_alpha rho
// has exactly zero mean, and q = e / rho rides along characteristics in
// unidirectional mode.
struct EntropyFields {
  ScalarField e;
  ScalarField q;
};
EntropyFields entropy_fields(const FlowState& s, double alpha);

// (div u)^2 - tr((grad u)^2): the residual forcing of the entropy balance in
// vector mode; identically zero under the unidirectional ansatz.
ScalarField entropy_source(const FlowState& s);

}  // namespace flockspec
