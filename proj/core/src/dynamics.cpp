#include "flockspec/dynamics.hpp"

#include <string>

#include "flockspec/operators.hpp"

namespace flockspec {

int velocity_components(const TorusGrid& g, FlowMode mode) {
  return mode == FlowMode::Vector ? g.dim : 1;
}

FlowState::FlowState(const TorusGrid& g, FlowMode m) : grid(g), mode(m), rho(g) {
  u.assign(static_cast<std::size_t>(velocity_components(g, m)), ScalarField(g));
}

ScalarField alignment_commutator(const ScalarField& f, const ScalarField& rho,
                                 double alpha) {
  ScalarField lam_rho = fractional_laplacian(rho, alpha);
  ScalarField gain = dealias_product(lam_rho, f);
  ScalarField loss = fractional_laplacian(dealias_product(rho, f), alpha);
  for (std::size_t i = 0; i < f.grid.size; ++i) gain.values[i] -= loss.values[i];
  return gain;
}

double vacuum_ratio(const FlowState& s) {
  double mean = field_mean(s.rho);
  if (mean <= 0.0) return 0.0;
  return field_min(s.rho) / mean;
}

namespace {

void add_viscosity(ScalarField& du, const ScalarField& u, double eps) {
  if (eps == 0.0) return;
  SpectralField U = forward_transform(u);
  laplacian_inplace(U);
  ScalarField lap = inverse_transform(U);
  for (std::size_t i = 0; i < u.grid.size; ++i) du.values[i] += eps * lap.values[i];
}

}  // namespace

FlowState rhs(const FlowState& s, const FlowParams& p) {
  const TorusGrid& g = s.grid;
  if (vacuum_ratio(s) < 1e-8)
    throw NumericalError("density ratio min/mean = " + std::to_string(vacuum_ratio(s)) +
                         " below vacuum floor 1e-8 at t = " + std::to_string(s.time));

  FlowState d(g, s.mode);
  const int nu = velocity_components(g, s.mode);

  if (s.mode == FlowMode::Unidirectional) {
    ScalarField flux = dealias_product(s.rho, s.u[0]);
    ScalarField dflux = partial_derivative(flux, 0);
    ScalarField du = partial_derivative(s.u[0], 0);
    ScalarField advect = dealias_product(s.u[0], du);
    ScalarField comm = alignment_commutator(s.u[0], s.rho, p.alpha);
    for (std::size_t i = 0; i < g.size; ++i) {
      d.rho.values[i] = -dflux.values[i];
      d.u[0].values[i] = -advect.values[i] + comm.values[i];
    }
    add_viscosity(d.u[0], s.u[0], p.eps);
    return d;
  }

  for (int a = 0; a < g.dim; ++a) {
    ScalarField flux = dealias_product(s.rho, s.u[a]);
    ScalarField dflux = partial_derivative(flux, a);
    for (std::size_t i = 0; i < g.size; ++i) d.rho.values[i] -= dflux.values[i];
  }
  for (int c = 0; c < nu; ++c) {
    for (int a = 0; a < g.dim; ++a) {
      ScalarField duc = partial_derivative(s.u[c], a);
      ScalarField advect = dealias_product(s.u[a], duc);
      for (std::size_t i = 0; i < g.size; ++i) d.u[c].values[i] -= advect.values[i];
    }
    ScalarField comm = alignment_commutator(s.u[c], s.rho, p.alpha);
    for (std::size_t i = 0; i < g.size; ++i) d.u[c].values[i] += comm.values[i];
    add_viscosity(d.u[c], s.u[c], p.eps);
  }
  return d;
}

EntropyFields entropy_fields(const FlowState& s, double alpha) {
  // e = div u - Lambda_alpha rho; the unidirectional ansatz makes div u = d_1 u
  EntropyFields out{partial_derivative(s.u[0], 0), ScalarField(s.grid)};
  if (s.mode == FlowMode::Vector) {
    for (int a = 1; a < s.grid.dim; ++a) {
      ScalarField da = partial_derivative(s.u[a], a);
      for (std::size_t i = 0; i < s.grid.size; ++i) out.e.values[i] += da.values[i];
    }
  }
  ScalarField lam = fractional_laplacian(s.rho, alpha);
  for (std::size_t i = 0; i < s.grid.size; ++i) {
    out.e.values[i] -= lam.values[i];
    if (s.rho.values[i] <= 0.0)
      throw NumericalError("nonpositive density in entropy quotient");
    out.q.values[i] = out.e.values[i] / s.rho.values[i];
  }
  return out;
}

ScalarField entropy_source(const FlowState& s) {
  if (s.mode != FlowMode::Vector)
    throw ValidationError("entropy source applies to vector mode only");
  const TorusGrid& g = s.grid;
  std::vector<ScalarField> grad;  // grad[j*dim + i] = d_j u_i
  grad.reserve(static_cast<std::size_t>(g.dim) * g.dim);
  for (int j = 0; j < g.dim; ++j)
    for (int i = 0; i < g.dim; ++i) grad.push_back(partial_derivative(s.u[i], j));
  ScalarField out(g);
  for (std::size_t p = 0; p < g.size; ++p) {
    double div = 0.0;
    for (int i = 0; i < g.dim; ++i) div += grad[static_cast<std::size_t>(i) * g.dim + i].values[p];
    double tr = 0.0;
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j)
        tr += grad[static_cast<std::size_t>(j) * g.dim + i].values[p] *
              grad[static_cast<std::size_t>(i) * g.dim + j].values[p];
    out.values[p] = div * div - tr;
  }
  return out;
}

}  // namespace flockspec
