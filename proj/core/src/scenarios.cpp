#include "flockspec/scenarios.hpp"

#include <cmath>

#include "flockspec/rng.hpp"

namespace flockspec {

namespace {

void require_dim(const SimConfig& c, int d) {
  if (c.dim != d)
    throw ValidationError("scenario '" + c.scenario.name + "' requires dim = " +
                          std::to_string(d));
}

void check_bump_amplitude(double a) {
  if (!(a >= 0.0 && a < 1.0))
    throw ValidationError("density amplitude a = " + std::to_string(a) +
                          " must lie in [0, 1) to keep the density positive");
}

// Band-limited random profile with sup norm 1: low modes with 1/(1+|k|^2)
// falloff, amplitudes and phases drawn from one counter stream so the result
// depends only on (seed, stream), not on evaluation order.
ScalarField random_profile(const TorusGrid& g, const CounterRng& rng,
                           std::uint64_t stream) {
  const int kb = std::min(g.dealias_cut(), 8);
  const double pi = 0.5 * kTwoPi;
  ScalarField f(g);
  std::uint64_t ctr = stream << 32;

  auto add_mode = [&](int k0, int k1) {
    double amp = rng.unit(ctr++) / (1.0 + k0 * k0 + k1 * k1);
    double phase = pi * rng.unit(ctr++);
    for (std::size_t i = 0; i < g.size; ++i) {
      auto x = g.point(i);
      f.values[i] += amp * std::cos(k0 * x[0] + k1 * x[1] + phase);
    }
  };

  if (g.dim == 1) {
    for (int k = 1; k <= kb; ++k) add_mode(k, 0);
  } else {
    for (int k0 = 0; k0 <= kb; ++k0)
      for (int k1 = -kb; k1 <= kb; ++k1) {
        if (k0 == 0 && k1 <= 0) continue;  // one mode per conjugate pair
        add_mode(k0, k1);
      }
  }
  double m = max_abs(f);
  if (m > 0.0)
    for (double& v : f.values) v /= m;
  return f;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"uniform", "bump1d", "rand_smooth", "bump2d_uni", "nearvac", "twave_check"};
}

FlowState make_scenario(const SimConfig& c) {
  const TorusGrid g = make_grid(c.dim, c.N);
  FlowState s(g, c.mode);
  const double a = c.scenario.a;
  const double b = c.scenario.b;
  const std::string& name = c.scenario.name;

  if (name == "uniform") {
    // exact steady state: constant velocity aligned with axis 0
    for (std::size_t i = 0; i < g.size; ++i) {
      s.rho.values[i] = 1.0;
      s.u[0].values[i] = b;
    }
  } else if (name == "bump1d" || name == "nearvac" || name == "twave_check") {
    require_dim(c, 1);
    const double amp = (name == "nearvac") ? 0.95 : a;
    check_bump_amplitude(amp);
    const bool constant_u = (name == "twave_check");
    for (std::size_t i = 0; i < g.size; ++i) {
      double x = g.point(i)[0];
      s.rho.values[i] = 1.0 + amp * std::cos(x);
      // constant u rides the alignment force exactly: the density profile
      // translates at speed b without deforming
      s.u[0].values[i] = constant_u ? b : b * std::sin(x);
    }
  } else if (name == "bump2d_uni") {
    require_dim(c, 2);
    check_bump_amplitude(a);
    for (std::size_t i = 0; i < g.size; ++i) {
      auto x = g.point(i);
      s.rho.values[i] = 1.0 + a * std::cos(x[0]) * std::cos(x[1]);
      s.u[0].values[i] = b * std::sin(x[0]) * std::cos(x[1]);
    }
    // vector mode keeps u[1] = 0: axis-aligned data for the invariance checks
  } else if (name == "rand_smooth") {
    CounterRng rng{c.seed};
    const double amp = std::min(a, 0.8);  // keeps min(rho) >= 0.2
    ScalarField gr = random_profile(g, rng, 1);
    for (std::size_t i = 0; i < g.size; ++i)
      s.rho.values[i] = 1.0 + amp * gr.values[i];
    for (std::size_t m = 0; m < s.u.size(); ++m) {
      ScalarField gu = random_profile(g, rng, 2 + m);
      for (std::size_t i = 0; i < g.size; ++i) s.u[m].values[i] = b * gu.values[i];
    }
  } else {
    throw ValidationError("unknown scenario '" + name + "'");
  }
  return s;
}

}  // namespace flockspec
