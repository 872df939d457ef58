#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flockspec/diagnostics.hpp"
#include "flockspec/operators.hpp"
#include "test_util.hpp"

using namespace flockspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

FlowState harmonic_state(int n) {
  TorusGrid g = make_grid(1, n);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double x, double) { return 1.0 + 0.3 * std::cos(x); });
  s.u[0] = make_field(g, [](double x, double) { return std::sin(x); });
  return s;
}

}  // namespace

TEST_CASE("conserved integrals for closed-form states") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double, double) { return 1.0; });
  s.u[0] = make_field(g, [](double, double) { return 2.0; });
  ConservedPair c = conserved(s);
  CHECK(c.components == 1);
  CHECK(c.mass == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(c.momentum[0] == doctest::Approx(4.0 * kPi).epsilon(1e-13));

  s.rho = make_field(g, [](double x, double) { return 1.0 + 0.5 * std::cos(x); });
  s.u[0] = make_field(g, [](double x, double) { return std::sin(x); });
  c = conserved(s);
  CHECK(c.mass == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(c.momentum[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
}

TEST_CASE("amplitude of scalar and vector states") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double, double) { return 1.0; });
  s.u[0] = make_field(g, [](double, double) { return 0.7; });
  CHECK(amplitude(s) == 0.0);
  s.u[0] = make_field(g, [](double x, double) { return std::sin(x); });
  CHECK(amplitude(s) == doctest::Approx(2.0).epsilon(1e-12));

  // vector mode: extremes (+-1, +-1) are realized on the grid, so the
  // pairwise scan must find the full diagonal 2 sqrt(2)
  TorusGrid g2 = make_grid(2, 32);
  FlowState v(g2, FlowMode::Vector);
  v.rho = make_field(g2, [](double, double) { return 1.0; });
  v.u[0] = make_field(g2, [](double, double y) { return std::cos(y); });
  v.u[1] = make_field(g2, [](double x, double) { return std::sin(x); });
  CHECK(amplitude(v) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("entropy statistics against the closed form") {
  TorusGrid g = make_grid(1, 64);
  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [](double, double) { return 1.4; });
  s.u[0] = make_field(g, [](double, double) { return 0.3; });
  EntropyStats st = entropy_stats(s, 1.0);
  CHECK(std::abs(st.sup_e) < 1e-14);
  CHECK(std::abs(st.sup_q) < 1e-14);
  CHECK(std::abs(st.mean_e) < 1e-14);

  // e = 0.7 cos, q peaks at x = pi with value -0.7/0.7 = -1
  s = harmonic_state(64);
  st = entropy_stats(s, 1.0);
  CHECK(st.sup_e == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(st.sup_q == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(st.mean_e) < 1e-14);
}

TEST_CASE("Sobolev norms anchored to Parseval") {
  TorusGrid g = make_grid(1, 64);
  ScalarField f = make_field(g, [](double x, double) { return std::cos(x); });
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  // (2pi) * (1+1)^2 * (1/4 + 1/4) = 4 pi
  CHECK(sobolev_norm(f, 2.0) == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-12));

  ScalarField c = make_field(g, [](double, double) { return 3.0; });
  CHECK(sobolev_norm(c, 1.5) == doctest::Approx(3.0 * std::sqrt(2.0 * kPi)).epsilon(1e-12));

  CHECK(gradient_sup(f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Holder proxy: domain, homogeneity, symmetry") {
  TorusGrid g = make_grid(1, 64);
  ScalarField c = make_field(g, [](double, double) { return 5.0; });
  CHECK(holder_seminorm(c, 0.5) == 0.0);

  ScalarField f = testutil::random_band_limited(g, 10, 5);
  double h1 = holder_seminorm(f, 0.5);
  CHECK(h1 > 0.0);
  ScalarField f2 = f;
  for (auto& v : f2.values) v *= 2.0;
  CHECK(holder_seminorm(f2, 0.5) == 2.0 * h1);  // exact homogeneity
  ScalarField fneg = f;
  for (auto& v : fneg.values) v = -v;
  CHECK(holder_seminorm(fneg, 0.5) == h1);

  CHECK_THROWS_AS(holder_seminorm(f, 0.0), ValidationError);
  CHECK_THROWS_AS(holder_seminorm(f, 1.0), ValidationError);
}

TEST_CASE("decay fit recovers synthetic exponentials") {
  std::vector<double> t, v;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.05 * i);
    v.push_back(3.0 * std::exp(-0.7 * 0.05 * i));
  }
  DecayFit fit = fit_decay_rate(t, v);
  REQUIRE(fit.ok);
  CHECK(fit.rate == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.t_begin >= 4.99);
  CHECK(fit.t_end == doctest::Approx(10.0));

  std::vector<double> vc(t.size(), 2.5);
  fit = fit_decay_rate(t, vc);
  REQUIRE(fit.ok);
  CHECK(fit.rate == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

  // garbage before the trailing window must not pollute the fit
  std::vector<double> vg = v;
  for (std::size_t i = 0; i < vg.size() / 3; ++i) vg[i] = 1e6;
  fit = fit_decay_rate(t, vg);
  REQUIRE(fit.ok);
  CHECK(fit.rate == doctest::Approx(0.7).epsilon(1e-10));

  std::vector<double> vz = v;
  vz[190] = 0.0;
  fit = fit_decay_rate(t, vz);
  CHECK_FALSE(fit.ok);
  CHECK(!fit.reason.empty());

  fit = fit_decay_rate({0.0}, {1.0});
  CHECK_FALSE(fit.ok);
}

TEST_CASE("traveling frame undoes an exact traveling wave") {
  TorusGrid g = make_grid(1, 64);
  const double ubar = 0.6180339887;
  auto profile = [](double x) { return 1.0 + 0.4 * std::cos(x) + 0.1 * std::sin(2.0 * x); };

  FlowState s(g, FlowMode::Unidirectional);
  s.rho = make_field(g, [&](double x, double) { return profile(x); });
  s.u[0] = make_field(g, [](double, double) { return 0.0; });
  ScalarField back = traveling_frame(s, ubar);  // t = 0: identity
  CHECK(max_abs_diff(back, s.rho) < 1e-13);

  for (double tshot : {0.7, 2.3}) {
    FlowState w(g, FlowMode::Unidirectional);
    w.time = tshot;
    w.rho = make_field(g, [&](double x, double) { return profile(x - ubar * tshot); });
    w.u[0] = make_field(g, [](double, double) { return 0.0; });
    ScalarField shifted = traveling_frame(w, ubar);
    CHECK(max_abs_diff(shifted, s.rho) < 1e-11);
  }
}

TEST_CASE("limiting profile of a steady trajectory") {
  TorusGrid g = make_grid(1, 64);
  std::vector<FlowState> traj;
  for (double t : {0.0, 1.0, 2.0, 3.0}) {
    FlowState s(g, FlowMode::Unidirectional);
    s.time = t;
    s.rho = make_field(g, [](double, double) { return 1.0; });
    s.u[0] = make_field(g, [](double, double) { return 0.25; });
    traj.push_back(s);
  }
  LimitingProfile lp = limiting_profile(traj);
  CHECK(lp.u_bar == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(lp.cauchy_residuals.size() == 3);
  for (double r : lp.cauchy_residuals) CHECK(r < 1e-12);
  CHECK(max_abs_diff(lp.rho_bar, traj[0].rho) < 1e-12);

  traj.erase(traj.begin() + 2, traj.end());
  CHECK_THROWS_AS(limiting_profile(traj), ValidationError);
}

TEST_CASE("record assembly mirrors the individual measurements") {
  FlowState s = harmonic_state(64);
  DiagnosticsOptions opt;
  opt.sobolev_s = {0.0, 2.0};
  DiagnosticsRecord r = measure(s, 1.0, opt, 0.0125);
  CHECK(r.t == s.time);
  CHECK(r.dt == 0.0125);
  CHECK(r.momentum_components == 1);
  CHECK(r.mass == doctest::Approx(conserved(s).mass).epsilon(1e-15));
  CHECK(r.amplitude == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.rho_min == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r.rho_max == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(r.sup_q == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.sup_e == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r.grad_u_inf == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.grad_rho_inf == doctest::Approx(0.3).epsilon(1e-12));
  REQUIRE(r.sobolev_u.size() == 2);
  CHECK(r.sobolev_u[0] == doctest::Approx(sobolev_norm(s.u[0], 0.0)).epsilon(1e-15));
  CHECK(r.sobolev_u[1] == doctest::Approx(sobolev_norm(s.u[0], 2.0)).epsilon(1e-15));
  CHECK(r.holder_rho == doctest::Approx(holder_seminorm(s.rho, 0.5)).epsilon(1e-15));
}
