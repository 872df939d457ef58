#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "flockspec/integrator.hpp"
#include "flockspec/operators.hpp"
#include "test_util.hpp"

using namespace flockspec;

namespace {

FlowState smooth_state(int n, double rho_amp, double u_amp) {
  TorusGrid g = make_grid(1, n);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [=](double x, double) { return 1.0 + rho_amp * std::cos(x); });
  s.u[0] = make_field(g, [=](double x, double) { return u_amp * std::sin(x); });
  return s;
}

double state_diff(const FlowState& a, const FlowState& b) {
  double m = max_abs_diff(a.rho, b.rho);
  for (std::size_t c = 0; c < a.u.size(); ++c)
    m = std::max(m, max_abs_diff(a.u[c], b.u[c]));
  return m;
}

double momentum(const FlowState& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.grid.size; ++i)
    acc += s.rho.values[i] * s.u[0].values[i];
  return acc * std::pow(s.grid.h, s.grid.dim);
}

double mass(const FlowState& s) {
  double acc = 0.0;
  for (double v : s.rho.values) acc += v;
  return acc * std::pow(s.grid.h, s.grid.dim);
}

}  // namespace

TEST_CASE("stable step size against the dissipative scale, frozen case") {
  // N = 64, alpha = 1, rho = 1, u = 0: 0.4 / (N/3) = 0.01875
  FlowState s = smooth_state(64, 0.0, 0.0);
  CHECK(stable_dt(s, FlowParams{1.0, 0.0}, StepPolicy{}) ==
        doctest::Approx(0.01875).epsilon(1e-14));
}

TEST_CASE("stable step size switches to the advective limit for fast flow") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double, double) { return 1.0; });
  s.u[0] = make_field(g, [](double x, double) { return 10.0 * std::sin(x); });
  // max|u| lands exactly on the grid: 0.4 h / 10
  CHECK(stable_dt(s, FlowParams{1.0, 0.0}, StepPolicy{}) ==
        doctest::Approx(0.4 * g.h / 10.0).epsilon(1e-14));
}

TEST_CASE("step cap binds on coarse grids") {
  FlowState s = smooth_state(8, 0.0, 0.0);
  double dt = stable_dt(s, FlowParams{0.5, 0.0}, StepPolicy{});
  CHECK(dt == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("viscosity tightens the stable step") {
  FlowState s = smooth_state(64, 0.0, 0.0);
  double dt0 = stable_dt(s, FlowParams{1.0, 0.0}, StepPolicy{});
  double dt1 = stable_dt(s, FlowParams{1.0, 0.05}, StepPolicy{});
  CHECK(dt1 < dt0);
  // 0.4 / (kmax + eps kmax^2), kmax = 64/3
  double kmax = 64.0 / 3.0;
  CHECK(dt1 == doctest::Approx(0.4 / (kmax + 0.05 * kmax * kmax)).epsilon(1e-14));
}

TEST_CASE("single step is third order in time") {
  FlowState s = smooth_state(32, 0.3, 0.3);
  FlowParams p{1.0, 0.0};
  const double T = 0.4;

  auto advance = [&](int steps) {
    FlowState cur = s;
    double dt = T / steps;
    for (int i = 0; i < steps; ++i) cur = step_ssprk3(cur, p, dt);
    return cur;
  };
  FlowState ref = advance(160);
  double e1 = state_diff(advance(20), ref);
  double e2 = state_diff(advance(40), ref);
  double order = std::log2(e1 / e2);
  CHECK(order > 2.7);
  CHECK(order < 3.3);
}

TEST_CASE("adaptive run conserves mass and momentum to roundoff") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = testutil::random_density(g, 8, 7);
  s.u[0] = testutil::random_band_limited(g, 8, 8, 0.5);
  double m0 = mass(s), p0 = momentum(s);

  RunResult r = run_flow(s, FlowParams{1.5, 0.0}, StepPolicy{}, 1.0);
  REQUIRE(r.status == RunStatus::Finished);
  CHECK(r.state.time == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mass(r.state) - m0) < 1e-12 * std::abs(m0));
  // mass is a linear invariant and survives the RK stages exactly; momentum
  // is quadratic in the state and drifts at the O(dt^3) invariant error
  CHECK(std::abs(momentum(r.state) - p0) < 5e-9);
}

TEST_CASE("observer sees the initial state and every accepted step") {
  FlowState s = smooth_state(32, 0.2, 0.1);
  std::vector<double> times;
  std::vector<std::size_t> steps;
  RunResult r = run_flow(s, FlowParams{1.0, 0.0}, StepPolicy{}, 0.3,
                         [&](const FlowState& st, std::size_t k) {
                           times.push_back(st.time);
                           steps.push_back(k);
                         });
  REQUIRE(r.status == RunStatus::Finished);
  CHECK(times.size() == r.steps + 1);
  CHECK(steps.front() == 0);
  CHECK(steps.back() == r.steps);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == doctest::Approx(0.3).epsilon(1e-12));
  for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}

TEST_CASE("entropy quotient amplitude does not grow") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double x, double) { return 1.0 + 0.5 * std::cos(x); });
  s.u[0] = make_field(g, [](double x, double) { return 0.4 * std::sin(x); });
  FlowParams p{1.0, 0.0};
  double q0 = max_abs(entropy_fields(s, p.alpha).q);
  double worst = q0;
  RunResult r = run_flow(s, p, StepPolicy{}, 0.5, [&](const FlowState& st, std::size_t) {
    worst = std::max(worst, max_abs(entropy_fields(st, p.alpha).q));
  });
  REQUIRE(r.status == RunStatus::Finished);
  // slack covers the O(dt^3) time error at this coarse step size
  CHECK(worst <= q0 + 1e-6);
}

TEST_CASE("vacuum breakdown surfaces as an abort, not an exception") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double x, double) { return 1.0 - std::cos(x) + 1e-9; });
  s.u[0] = make_field(g, [](double x, double) { return std::sin(x); });
  RunResult r = run_flow(s, FlowParams{1.0, 0.0}, StepPolicy{}, 1.0);
  CHECK(r.status == RunStatus::Aborted);
  CHECK(r.abort_reason.find("vacuum") != std::string::npos);
}

TEST_CASE("nonsensical run configuration is rejected") {
  FlowState s = smooth_state(32, 0.2, 0.1);
  CHECK_THROWS_AS(run_flow(s, FlowParams{1.0, 0.0}, StepPolicy{}, -1.0), ValidationError);
  CHECK_THROWS_AS(run_flow(s, FlowParams{1.0, 0.0}, StepPolicy{0.0, 0.4, 0.05}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(step_ssprk3(s, FlowParams{1.0, 0.0}, 0.0), ValidationError);
}
