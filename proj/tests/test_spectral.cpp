#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "flockspec/operators.hpp"
#include "test_util.hpp"

using namespace flockspec;

namespace {
constexpr double kPi = 3.14159265358979323846;

ScalarField noise_field(const TorusGrid& g, std::uint64_t seed) {
  // full-spectrum noise including Nyquist content
  ScalarField f(g);
  for (std::size_t i = 0; i < g.size; ++i) f.values[i] = testutil::unit(seed, i);
  return f;
}

double inner(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  double hn = a.grid.h;
  if (a.grid.dim == 2) hn *= a.grid.h;
  return s * hn;
}
}  // namespace

TEST_CASE("grid construction rejects bad shapes") {
  CHECK_THROWS_AS(make_grid(3, 64), ValidationError);
  CHECK_THROWS_AS(make_grid(1, 100), ValidationError);
  CHECK_THROWS_AS(make_grid(1, 4), ValidationError);
  TorusGrid g = make_grid(2, 16);
  CHECK(g.size == 256);
  CHECK(g.h == doctest::Approx(kTwoPi / 16));
}

TEST_CASE("transform round trip and Parseval") {
  for (auto [dim, n] : {std::pair{1, 64}, std::pair{2, 32}}) {
    TorusGrid g = make_grid(dim, n);
    ScalarField f = noise_field(g, 17);
    SpectralField F = forward_transform(f);
    ScalarField back = inverse_transform(F);
    CHECK(max_abs_diff(f, back) / max_abs(f) < 1e-12);

    double grid_energy = 0.0;
    for (double v : f.values) grid_energy += v * v;
    grid_energy /= static_cast<double>(g.size);
    CHECK(spectral_energy(F) == doctest::Approx(grid_energy).epsilon(1e-12));
  }
}

TEST_CASE("forward transform of real data is Hermitian symmetric") {
  TorusGrid g = make_grid(1, 64);
  SpectralField F = forward_transform(noise_field(g, 23));
  double scale = 0.0, worst = 0.0;
  for (int i = 0; i < g.n; ++i) scale = std::max(scale, std::abs(F.coeff[i]));
  for (int i = 1; i < g.n; ++i)
    worst = std::max(worst, std::abs(F.coeff[i] - std::conj(F.coeff[g.n - i])));
  CHECK(worst / scale < 1e-13);
}

TEST_CASE("fractional Laplacian multiplier on a single mode") {
  TorusGrid g = make_grid(1, 64);
  ScalarField f = make_field(g, [](double x, double) { return std::cos(2 * x); });
  ScalarField lam = fractional_laplacian(f, 1.0);
  ScalarField want = make_field(g, [](double x, double) { return 2 * std::cos(2 * x); });
  CHECK(max_abs_diff(lam, want) < 1e-12);
}

TEST_CASE("fractional Laplacian semigroup, mean annihilation, self-adjointness") {
  TorusGrid g = make_grid(2, 32);
  ScalarField f = testutil::random_band_limited(g, 9, 5);
  ScalarField gfield = testutil::random_band_limited(g, 9, 6);

  ScalarField twice = fractional_laplacian(fractional_laplacian(f, 0.7), 0.9);
  ScalarField once = fractional_laplacian(f, 1.6);
  CHECK(max_abs_diff(twice, once) / max_abs(once) < 1e-10);

  CHECK(std::abs(field_mean(fractional_laplacian(f, 1.3))) < 1e-13);

  double lhs = inner(fractional_laplacian(f, 1.1), gfield);
  double rhs = inner(f, fractional_laplacian(gfield, 1.1));
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-11);
}

TEST_CASE("L2 norm of Lambda_alpha f equals the homogeneous Sobolev norm") {
  TorusGrid g = make_grid(1, 64);
  ScalarField f = testutil::random_band_limited(g, 14, 8);
  const double alpha = 1.3;
  ScalarField lam = fractional_laplacian(f, alpha);
  double l2 = std::sqrt(inner(lam, lam));
  double hdot = std::sqrt(kTwoPi * homogeneous_sum(forward_transform(f), alpha));
  CHECK(l2 == doctest::Approx(hdot).epsilon(1e-12));
}

TEST_CASE("alpha outside (0,2) is rejected") {
  TorusGrid g = make_grid(1, 32);
  ScalarField f = testutil::random_band_limited(g, 4, 2);
  CHECK_THROWS_AS(fractional_laplacian(f, 2.5), ValidationError);
  CHECK_THROWS_AS(fractional_laplacian(f, 0.0), ValidationError);
}

TEST_CASE("partial derivative of sin is cos, axis handling in 2D") {
  TorusGrid g = make_grid(2, 32);
  ScalarField f = make_field(g, [](double x, double y) { return std::sin(x) + std::cos(2 * y); });
  ScalarField dx = partial_derivative(f, 0);
  ScalarField dy = partial_derivative(f, 1);
  ScalarField want_dx = make_field(g, [](double x, double) { return std::cos(x); });
  ScalarField want_dy = make_field(g, [](double, double y) { return -2 * std::sin(2 * y); });
  CHECK(max_abs_diff(dx, want_dx) < 1e-12);
  CHECK(max_abs_diff(dy, want_dy) < 1e-12);
  CHECK_THROWS_AS(partial_derivative(f, 2), ValidationError);
}

TEST_CASE("dealiasing kills the upper third and is idempotent") {
  TorusGrid g = make_grid(1, 64);
  SpectralField F = forward_transform(noise_field(g, 31));
  dealias(F);
  CHECK(F.dealiased);
  const int cut = g.dealias_cut();
  for (int i = 0; i < g.n; ++i) {
    if (std::abs(g.wavenumber(i)) > cut) CHECK(std::abs(F.coeff[i]) == 0.0);
  }
  SpectralField again = F;
  dealias(again);
  for (int i = 0; i < g.n; ++i) CHECK(again.coeff[i] == F.coeff[i]);
}

TEST_CASE("spectral shift is exact for band-limited fields") {
  TorusGrid g = make_grid(1, 64);
  ScalarField f = make_field(g, [](double x, double) {
    return 0.3 + std::cos(3 * x) - 0.5 * std::sin(7 * x);
  });
  const double d = 0.6180339887;
  ScalarField shifted = spectral_shift(f, {d, 0.0});
  ScalarField want = make_field(g, [&](double x, double) {
    return 0.3 + std::cos(3 * (x + d)) - 0.5 * std::sin(7 * (x + d));
  });
  CHECK(max_abs_diff(shifted, want) < 1e-12);

  ScalarField back = spectral_shift(shifted, {-d, 0.0});
  CHECK(max_abs_diff(back, f) < 1e-13);

  ScalarField full_turn = spectral_shift(f, {kTwoPi, 0.0});
  CHECK(max_abs_diff(full_turn, f) < 1e-12);
}
