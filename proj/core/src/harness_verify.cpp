#include <cmath>
#include <cstdio>
#include <ostream>

#include "flockspec/harness.hpp"
#include "flockspec/kernel_oracle.hpp"
#include "flockspec/operators.hpp"
#include "flockspec/rng.hpp"
#include "flockspec/scenarios.hpp"

namespace flockspec {

namespace {

struct Reporter {
  std::ostream& os;
  std::size_t checks = 0;
  std::size_t fails = 0;

  void line(const char* name, double alpha, int n, double err, double tol) {
    ++checks;
    bool ok = err <= tol;
    if (!ok) ++fails;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-26s alpha=%.2f N=%-4d err=%.3e tol=%.1e %s\n",
                  name, alpha, n, err, tol, ok ? "pass" : "FAIL");
    os << buf;
  }
};

std::vector<std::size_t> probe_points(const TorusGrid& g, int count) {
  std::vector<std::size_t> pts;
  for (int j = 0; j < count; ++j)
    pts.push_back(static_cast<std::size_t>(j) * g.size / count);
  return pts;
}

double inner_product(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s * std::pow(a.grid.h, a.grid.dim);
}

// Narrow-band random profile: products of two probes stay below the
// dealiasing cut (2 kb <= N/3), so the spectral route is exact on them and
// any disagreement with the quadrature oracle is a real defect.
ScalarField probe_profile(const TorusGrid& g, std::uint64_t stream) {
  const int kb = std::max(1, g.n / 8);
  const CounterRng rng{7};
  ScalarField f(g);
  std::uint64_t ctr = stream << 32;
  for (int k = 1; k <= kb; ++k) {
    double amp = rng.unit(ctr++) / (1.0 + k * k);
    double phase = 0.5 * kTwoPi * rng.unit(ctr++);
    for (std::size_t i = 0; i < g.size; ++i)
      f.values[i] += amp * std::cos(k * g.point(i)[0] + phase);
  }
  double m = max_abs(f);
  if (m > 0.0)
    for (double& v : f.values) v /= m;
  return f;
}

// seeded 1D probe data shared by all the checks at one (alpha, N)
FlowState probe_state(int n) {
  const TorusGrid g = make_grid(1, n);
  FlowState s(g, FlowMode::Unidirectional);
  ScalarField p = probe_profile(g, 1);
  for (std::size_t i = 0; i < g.size; ++i) s.rho.values[i] = 1.0 + 0.5 * p.values[i];
  s.u[0] = probe_profile(g, 2);
  return s;
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& report) {
  if (opt.alphas.empty() || opt.grids.empty())
    throw ValidationError("verify needs at least one alpha and one grid size");
  for (double a : opt.alphas)
    if (!(a > 0.0 && a < 2.0))
      throw ValidationError("alpha = " + std::to_string(a) +
                            " outside admissible interval (0, 2)");
  for (int n : opt.grids)
    if (n < 16 || (n & (n - 1)) != 0)
      throw ValidationError("N = " + std::to_string(n) +
                            " is not a power of two (minimum 16)");

  Reporter r{report};

  for (double alpha : opt.alphas) {
    for (int n : opt.grids) {
      FlowState s = probe_state(n);
      const ScalarField& rho = s.rho;
      const ScalarField& u = s.u[0];
      auto pts = probe_points(s.grid, 12);

      ScalarField lam = fractional_laplacian(rho, alpha);
      double scale = std::max(max_abs(lam), 1e-12);
      double err = 0.0;
      for (std::size_t idx : pts)
        err = std::max(err, std::abs(lam.values[idx] - lambda_direct(rho, idx, alpha)));
      r.line("lambda dual route", alpha, n, err / scale, 1e-6);

      ScalarField comm = alignment_commutator(u, rho, alpha);
      scale = std::max(max_abs(comm), 1e-12);
      err = 0.0;
      double flip = opt.inject_commutator_sign_error ? -1.0 : 1.0;
      for (std::size_t idx : pts)
        err = std::max(err, std::abs(comm.values[idx] -
                                     flip * commutator_direct(u, rho, idx, alpha)));
      r.line("commutator dual route", alpha, n, err / scale, 1e-5);

      ScalarField diss = d_alpha_field(rho, alpha);
      std::vector<ScalarField> grad = {partial_derivative(rho, 0)};
      scale = std::max(max_abs(diss), 1e-12);
      err = 0.0;
      for (std::size_t idx : pts)
        err = std::max(err, std::abs(diss.values[idx] - d_alpha_direct(grad, idx, alpha)));
      r.line("dissipation identity", alpha, n, err / scale, 1e-5);

      ScalarField eig = make_field(s.grid, [](double x, double) { return std::cos(x); });
      r.line("eigenfunction multiplier", alpha, n,
             max_abs_diff(fractional_laplacian(eig, alpha), eig), 1e-12);

      double lhs = inner_product(rho, fractional_laplacian(u, alpha));
      double rhs_ip = inner_product(fractional_laplacian(rho, alpha), u);
      r.line("self-adjointness", alpha, n,
             std::abs(lhs - rhs_ip) / std::max({std::abs(lhs), std::abs(rhs_ip), 1e-12}),
             1e-12);

      FlowState dot = rhs(s, FlowParams{alpha, 0.0});
      double mass_rate = std::abs(field_mean(dot.rho));
      double mom_rate = std::abs(inner_product(dot.rho, u) + inner_product(rho, dot.u[0]));
      r.line("mass rate", alpha, n, mass_rate, 1e-11);
      r.line("momentum rate", alpha, n, mom_rate, 1e-10);

      EntropyFields ent = entropy_fields(s, alpha);
      r.line("entropy mean", alpha, n, std::abs(field_mean(ent.e)), 1e-12);
    }
  }

  {
    // axis-aligned vector data must stay axis-aligned and source-free
    SimConfig c;
    c.alpha = opt.alphas.front();
    c.N = 32;
    c.dim = 2;
    c.mode = FlowMode::Vector;
    c.T = 0.0;
    c.scenario.name = "bump2d_uni";
    FlowState s = make_scenario(c);
    FlowState dot = rhs(s, FlowParams{c.alpha, 0.0});
    r.line("ansatz invariance", c.alpha, c.N, max_abs(dot.u[1]), 1e-13);
    r.line("ansatz source", c.alpha, c.N, max_abs(entropy_source(s)), 1e-12);
  }

  char buf[96];
  std::snprintf(buf, sizeof buf, "verify: %zu checks, %zu failed\n", r.checks, r.fails);
  report << buf;
  return r.fails == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace flockspec
