#include "flockspec/kernel_oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "flockspec/operators.hpp"

namespace flockspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

const bool gsl_handler_off = [] {
  gsl_set_error_handler_off();
  return true;
}();

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ValidationError("alpha = " + std::to_string(alpha) +
                          " outside admissible interval (0, 2)");
}

double gamma_upper(double a, double x) {
  gsl_sf_result r;
  int status = gsl_sf_gamma_inc_e(a, x, &r);
  if (status != GSL_SUCCESS)
    throw NumericalError("incomplete gamma failed, a=" + std::to_string(a) +
                         " x=" + std::to_string(x));
  return r.val;
}

// reduce each component to [0, pi]; the kernel is even per component, and
// folding makes that exact in floating point
std::array<double, 2> reduce_cell(int dim, std::array<double, 2> z) {
  for (int d = 0; d < dim; ++d) {
    z[d] = std::fabs(std::remainder(z[d], kTwoPi));
  }
  if (dim == 1) z[1] = 0.0;
  return z;
}

// ---------------------------------------------------------------------------
// Ewald splitting of phi_alpha(z) = sum_k |z+2pi k|^{-s}, s = dim+alpha:
//   Gamma(s/2) phi(z) = sum_k r_k^{-s} Gamma(s/2, eta r_k^2)
//     + pi^{dim/2}/(2pi)^dim [ 2 eta^{alpha/2}/alpha
//         + sum_{m!=0} cos(m.z) (|m|^2/4)^{alpha/2} Gamma(-alpha/2, |m|^2/(4 eta)) ].
// With eta = 1 both sums converge to machine precision within |k|_inf <= 2
// and |m|^2 <= 172.
// ---------------------------------------------------------------------------
struct Ewald {
  int dim;
  double alpha;
  double s;
  double eta = 1.0;
  double inv_gamma_s2;
  double pref;     // pi^{dim/2} / (2pi)^dim
  double m0_term;  // 2 eta^{alpha/2} / alpha
  std::vector<std::array<int, 2>> dual;
  std::vector<double> dual_coef;

  Ewald(int dim_, double alpha_) : dim(dim_), alpha(alpha_), s(dim_ + alpha_) {
    inv_gamma_s2 = 1.0 / std::tgamma(0.5 * s);
    pref = std::pow(kPi, 0.5 * dim) / std::pow(kTwoPi, dim);
    m0_term = 2.0 * std::pow(eta, 0.5 * alpha) / alpha;
    const int mcap = 13;  // exp(-|m|^2/4) below 2e-19 past |m|^2 = 172
    // (|m|^2/4)^{alpha/2} Gamma(-alpha/2, |m|^2/(4 eta)) assembled through
    // Gamma(1-b, q) with b = alpha/2; GSL loses ~1e-10 on the negative-order
    // incomplete gamma directly, the recurrence keeps full precision
    const double b = 0.5 * alpha;
    auto add = [&](int m0, int m1) {
      double m2 = static_cast<double>(m0) * m0 + static_cast<double>(m1) * m1;
      if (m2 == 0.0 || m2 > 172.0) return;
      double q = 0.25 * m2 / eta;
      double coef = (std::exp(-q) - std::pow(q, b) * gamma_upper(1.0 - b, q)) / b;
      dual.push_back({m0, m1});
      dual_coef.push_back(std::pow(eta, b) * coef);
    };
    if (dim == 1) {
      for (int m = -mcap; m <= mcap; ++m) add(m, 0);
    } else {
      for (int m0 = -mcap; m0 <= mcap; ++m0)
        for (int m1 = -mcap; m1 <= mcap; ++m1) add(m0, m1);
    }
  }

  double fourier_at(const std::array<double, 2>& z) const {
    double four = m0_term;
    for (std::size_t i = 0; i < dual.size(); ++i)
      four += std::cos(dual[i][0] * z[0] + dual[i][1] * z[1]) * dual_coef[i];
    return four;
  }

  // real-space sum over images; when subtract_central, the k = 0 image
  // contributes -r^{-s} gamma_lower(s/2, eta r^2), evaluated by a
  // cancellation-free series (this yields phi - |z|^{-s}, smooth at 0).
  double real_space(const std::array<double, 2>& z, bool subtract_central) const {
    double acc = 0.0;
    const int kcap = 2;
    for (int k0 = -kcap; k0 <= kcap; ++k0) {
      for (int k1 = (dim == 2 ? -kcap : 0); k1 <= (dim == 2 ? kcap : 0); ++k1) {
        double z0 = z[0] + kTwoPi * k0;
        double z1 = dim == 2 ? z[1] + kTwoPi * k1 : 0.0;
        double r2 = z0 * z0 + z1 * z1;
        bool central = (k0 == 0 && k1 == 0);
        double x = eta * r2;
        if (central && subtract_central) {
          // -eta^{s/2} e^{-x} sum_j x^j / ((s/2)(s/2+1)...(s/2+j))
          double term = 1.0 / (0.5 * s);
          double sum = term;
          for (int j = 1; j < 64; ++j) {
            term *= x / (0.5 * s + j);
            sum += term;
            if (term < 1e-18 * sum) break;
          }
          acc -= std::pow(eta, 0.5 * s) * std::exp(-x) * sum;
          continue;
        }
        if (r2 == 0.0)
          throw ValidationError("periodized kernel evaluated at a lattice point");
        if (x > 46.0) continue;  // Gamma(s/2, x) below 1e-20
        acc += std::pow(r2, -0.5 * s) * gamma_upper(0.5 * s, x);
      }
    }
    return acc;
  }

  double phi(std::array<double, 2> z) const {
    z = reduce_cell(dim, z);
    return (real_space(z, false) + pref * fourier_at(z)) * inv_gamma_s2;
  }

  // phi(z) - |z|^{-s}, smooth on the inner ball
  double remainder(std::array<double, 2> z) const {
    z = reduce_cell(dim, z);
    return (real_space(z, true) + pref * fourier_at(z)) * inv_gamma_s2;
  }
};

std::mutex ewald_mutex;
std::map<std::pair<int, double>, std::shared_ptr<const Ewald>> ewald_cache;

std::shared_ptr<const Ewald> get_ewald(int dim, double alpha) {
  std::lock_guard<std::mutex> lock(ewald_mutex);
  auto key = std::make_pair(dim, alpha);
  auto it = ewald_cache.find(key);
  if (it != ewald_cache.end()) return it->second;
  auto e = std::make_shared<const Ewald>(dim, alpha);
  ewald_cache[key] = e;
  return e;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre tables (GSL) cached per node count.
// ---------------------------------------------------------------------------
std::mutex gl_mutex;
std::map<int, gsl_integration_glfixed_table*> gl_cache;

gsl_integration_glfixed_table* gl_table(int n) {
  std::lock_guard<std::mutex> lock(gl_mutex);
  auto it = gl_cache.find(n);
  if (it != gl_cache.end()) return it->second;
  auto* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  gl_cache[n] = t;
  return t;
}

// ---------------------------------------------------------------------------
// Exact inner-ball moments of the free kernel against single modes:
//   M_1(kappa) = int_0^{r0} 2 (1 - cos(kappa r)) r^{-1-alpha} dr
//   M_2(kappa) = int_{|z|<r0} (1 - cos(k.z)) |z|^{-2-alpha} dz
//             = 2 pi int_0^{r0} (1 - J0(kappa r)) r^{-1-alpha} dr,
// entire alternating series in kappa r0, accumulated in long double.
// ---------------------------------------------------------------------------
double ball_moment(int dim, double alpha, double r0, double kappa) {
  if (kappa == 0.0) return 0.0;
  const long double u2 = static_cast<long double>(kappa) * kappa * r0 * r0;
  const long double r0a = std::pow(static_cast<long double>(r0), -static_cast<long double>(alpha));
  long double acc = 0.0L;
  long double pow_term = 1.0L;  // u^{2m}/(2m)! resp. (u/2)^{2m}/(m!)^2
  for (int m = 1; m <= 90; ++m) {
    if (dim == 1) {
      pow_term *= u2 / ((2.0L * m - 1.0L) * (2.0L * m));
    } else {
      pow_term *= u2 / (4.0L * m * m);
    }
    long double term = pow_term * r0a / (2.0L * m - alpha);
    if (m % 2 == 0) term = -term;
    acc += term;
    if (std::abs(static_cast<double>(term)) <
        1e-19 * (std::abs(static_cast<double>(acc)) + 1e-300) && m > 4)
      break;
  }
  double scale = dim == 1 ? 2.0 : kTwoPi;
  return scale * static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// Quadrature context: node/weight/kernel tables shared by all direct
// evaluations with the same (grid, alpha, spec).
// ---------------------------------------------------------------------------
struct QuadContext {
  int dim;
  double alpha;
  double r0;
  std::vector<std::array<double, 2>> outer_z;
  std::vector<double> outer_wphi;  // GL weight times phi_alpha at the node
  std::vector<std::array<double, 2>> ball_z;
  std::vector<double> ball_wrem;   // GL weight times (phi - free kernel)
};

using QuadKey = std::tuple<int, int, double, double, int, int, int>;
std::mutex quad_mutex;
std::map<QuadKey, std::shared_ptr<const QuadContext>> quad_cache;

std::shared_ptr<const QuadContext> get_quad(const TorusGrid& g, double alpha,
                                            const QuadratureSpec& spec) {
  check_alpha(alpha);
  double r0 = spec.inner_radius == 0.0 ? 2.0 * g.h : spec.inner_radius;
  if (r0 < g.h)
    throw ValidationError("quadrature inner radius below grid spacing");
  if (r0 > 0.5 * kPi)
    throw ValidationError("quadrature inner radius too large");
  if (spec.radial_panels < 4 || spec.nodes_per_panel < 2 || spec.nodes_per_panel > 40)
    throw ValidationError("quadrature panel configuration out of range");
  int n_theta = spec.angular_nodes > 0 ? spec.angular_nodes : std::max(16, (3 * g.n) / 8);

  QuadKey key{g.dim, g.n, alpha, r0, spec.radial_panels, spec.nodes_per_panel, n_theta};
  {
    std::lock_guard<std::mutex> lock(quad_mutex);
    auto it = quad_cache.find(key);
    if (it != quad_cache.end()) return it->second;
  }

  auto ew = get_ewald(g.dim, alpha);
  auto ctx = std::make_shared<QuadContext>();
  ctx->dim = g.dim;
  ctx->alpha = alpha;
  ctx->r0 = r0;

  auto* gl = gl_table(spec.nodes_per_panel);
  const int P = spec.radial_panels;

  if (g.dim == 1) {
    // outer: int_{r0<|z|<pi}, geometric panels toward the singular end
    const double ratio = std::pow(kPi / r0, 1.0 / P);
    for (int p = 0; p < P; ++p) {
      double a = r0 * std::pow(ratio, p);
      double b = std::min(r0 * std::pow(ratio, p + 1), kPi);
      for (int i = 0; i < spec.nodes_per_panel; ++i) {
        double r, w;
        gsl_integration_glfixed_point(a, b, i, &r, &w, gl);
        double wphi = w * ew->phi({r, 0.0});
        ctx->outer_z.push_back({r, 0.0});
        ctx->outer_wphi.push_back(wphi);
        ctx->outer_z.push_back({-r, 0.0});
        ctx->outer_wphi.push_back(wphi);
      }
    }
    // ball remainder: int_{|z|<r0} w(z) (phi - free)(z) dz, smooth integrand
    auto* glb = gl_table(12);
    for (int i = 0; i < 12; ++i) {
      double r, w;
      gsl_integration_glfixed_point(0.0, r0, i, &r, &w, glb);
      double wrem = w * ew->remainder({r, 0.0});
      ctx->ball_z.push_back({r, 0.0});
      ctx->ball_wrem.push_back(wrem);
      ctx->ball_z.push_back({-r, 0.0});
      ctx->ball_wrem.push_back(wrem);
    }
  } else {
    // outer: polar over [-pi,pi]^2 \ B(r0), split in octants so the square
    // boundary rho(theta) stays smooth per patch
    auto* glt = gl_table(n_theta);
    for (int oct = 0; oct < 8; ++oct) {
      double t0 = oct * kPi / 4.0;
      double t1 = (oct + 1) * kPi / 4.0;
      for (int j = 0; j < n_theta; ++j) {
        double theta, wt;
        gsl_integration_glfixed_point(t0, t1, j, &theta, &wt, glt);
        double c = std::cos(theta), sn = std::sin(theta);
        double rho_max = kPi / std::max(std::abs(c), std::abs(sn));
        double ratio = std::pow(rho_max / r0, 1.0 / P);
        for (int p = 0; p < P; ++p) {
          double a = r0 * std::pow(ratio, p);
          double b = std::min(r0 * std::pow(ratio, p + 1), rho_max);
          for (int i = 0; i < spec.nodes_per_panel; ++i) {
            double r, wr;
            gsl_integration_glfixed_point(a, b, i, &r, &wr, gl);
            std::array<double, 2> z{r * c, r * sn};
            ctx->outer_z.push_back(z);
            ctx->outer_wphi.push_back(wt * wr * r * ew->phi(z));
          }
        }
      }
    }
    // ball remainder: polar Gauss x uniform angles (even count pairs +/-z)
    auto* glb = gl_table(10);
    const int T = 16;
    for (int i = 0; i < 10; ++i) {
      double r, wr;
      gsl_integration_glfixed_point(0.0, r0, i, &r, &wr, glb);
      for (int j = 0; j < T; ++j) {
        double theta = kTwoPi * j / T;
        std::array<double, 2> z{r * std::cos(theta), r * std::sin(theta)};
        ctx->ball_z.push_back(z);
        ctx->ball_wrem.push_back(wr * r * (kTwoPi / T) * ew->remainder(z));
      }
    }
  }

  std::lock_guard<std::mutex> lock(quad_mutex);
  quad_cache[key] = ctx;
  return ctx;
}

// moment lookup keyed by |j|^2 (integer), local to one evaluation
struct MomentCache {
  int dim;
  double alpha, r0;
  std::unordered_map<long long, double> memo;
  double operator()(long long j2) {
    auto it = memo.find(j2);
    if (it != memo.end()) return it->second;
    double v = ball_moment(dim, alpha, r0, std::sqrt(static_cast<double>(j2)));
    memo.emplace(j2, v);
    return v;
  }
};

void check_moment_band(const QuadContext& ctx, long long j2max) {
  double arg = std::sqrt(static_cast<double>(j2max)) * ctx.r0;
  if (arg > 16.0)
    throw NumericalError("inner-ball moment series argument " + std::to_string(arg) +
                         " too large; shrink inner_radius");
}

// power tables for trig evaluation at one point
struct PhaseTable {
  int kmax;
  std::vector<std::complex<double>> p0, p1;  // e^{i k x}, k in [-kmax, kmax]

  PhaseTable(int kmax_, double x0, double x1, int dim) : kmax(kmax_) {
    build(p0, x0);
    if (dim == 2) build(p1, x1);
  }
  void build(std::vector<std::complex<double>>& p, double x) const {
    p.assign(2 * kmax + 1, {1.0, 0.0});
    std::complex<double> w = std::polar(1.0, x);
    std::complex<double> acc{1.0, 0.0};
    for (int k = 1; k <= kmax; ++k) {
      acc *= w;
      p[kmax + k] = acc;
      p[kmax - k] = std::conj(acc);
    }
  }
  std::complex<double> at(int k0, int k1, int dim) const {
    return dim == 2 ? p0[kmax + k0] * p1[kmax + k1] : p0[kmax + k0];
  }
};

int rep_kmax(const TrigRep& rep) {
  int m = 0;
  for (const auto& k : rep.modes) m = std::max({m, std::abs(k[0]), std::abs(k[1])});
  return m;
}

}  // namespace

double normalization_constant(int dim, double alpha) {
  check_alpha(alpha);
  if (dim != 1 && dim != 2) throw ValidationError("dim must be 1 or 2");
  return std::pow(2.0, alpha) * std::tgamma(0.5 * (dim + alpha)) /
         (std::pow(kPi, 0.5 * dim) * std::abs(std::tgamma(-0.5 * alpha)));
}

PeriodizedKernel make_kernel(int dim, double alpha, int shell_radius) {
  check_alpha(alpha);
  if (dim != 1 && dim != 2) throw ValidationError("dim must be 1 or 2");
  if (shell_radius < 3)
    throw ValidationError("kernel shell radius must be at least 3");
  return {dim, alpha, shell_radius};
}

KernelValue kernel_value(const PeriodizedKernel& kernel, const std::array<double, 2>& z) {
  check_alpha(kernel.alpha);
  if (kernel.shell_radius < 3)
    throw ValidationError("kernel shell radius must be at least 3");
  const int K = kernel.shell_radius;
  const double s = kernel.dim + kernel.alpha;
  auto zr = reduce_cell(kernel.dim, z);
  double acc = 0.0;
  for (int k0 = -K; k0 <= K; ++k0) {
    for (int k1 = (kernel.dim == 2 ? -K : 0); k1 <= (kernel.dim == 2 ? K : 0); ++k1) {
      double z0 = zr[0] + kTwoPi * k0;
      double z1 = kernel.dim == 2 ? zr[1] + kTwoPi * k1 : 0.0;
      double r2 = z0 * z0 + z1 * z1;
      if (r2 == 0.0)
        throw ValidationError("periodized kernel evaluated at a lattice point");
      acc += std::pow(r2, -0.5 * s);
    }
  }
  // remainder <= sum_{|k|_inf > K} (pi |k|_inf)^{-s} <= C(dim, alpha) K^{-alpha}
  // by comparison with the integral of x^{-1-alpha}
  double tail_coeff = kernel.dim == 1
                          ? 2.0 / (kernel.alpha * std::pow(kPi, s))
                          : 8.0 / (kernel.alpha * std::pow(kPi, s));
  return {acc, tail_coeff * std::pow(static_cast<double>(K), -kernel.alpha)};
}

double kernel_value_accurate(int dim, double alpha, const std::array<double, 2>& z) {
  check_alpha(alpha);
  if (dim != 1 && dim != 2) throw ValidationError("dim must be 1 or 2");
  return get_ewald(dim, alpha)->phi(z);
}

TrigRep trig_rep(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  TrigRep rep;
  rep.grid = g;
  std::vector<std::complex<double>> full(g.size);
  // direct DFT, deliberately independent of the FFT path
  const double inv = 1.0 / static_cast<double>(g.size);
  if (g.dim == 1) {
    for (int k = -g.n / 2; k < g.n / 2; ++k) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < g.n; ++j)
        acc += f.values[j] * std::polar(1.0, -k * g.h * j);
      full[static_cast<std::size_t>((k + g.n) % g.n)] = acc * inv;
    }
  } else {
    // factor the 2D DFT through per-row 1D sums to keep it O(N^3)
    std::vector<std::complex<double>> row(g.size);
    for (int i0 = 0; i0 < g.n; ++i0) {
      for (int k1 = -g.n / 2; k1 < g.n / 2; ++k1) {
        std::complex<double> acc = 0.0;
        for (int j1 = 0; j1 < g.n; ++j1)
          acc += f.values[g.flat(i0, j1)] * std::polar(1.0, -k1 * g.h * j1);
        row[g.flat(i0, (k1 + g.n) % g.n)] = acc;
      }
    }
    for (int k0 = -g.n / 2; k0 < g.n / 2; ++k0) {
      for (int i1 = 0; i1 < g.n; ++i1) {
        std::complex<double> acc = 0.0;
        for (int j0 = 0; j0 < g.n; ++j0)
          acc += row[g.flat(j0, i1)] * std::polar(1.0, -k0 * g.h * j0);
        full[g.flat((k0 + g.n) % g.n, i1)] = acc * inv;
      }
    }
  }
  double cmax = 0.0;
  for (const auto& c : full) cmax = std::max(cmax, std::abs(c));
  // drop transform roundoff; grid data that went through an FFT carries
  // noise near 1e-14 of the leading coefficient in every bin
  const double cut = 1e-12 * cmax;
  for (std::size_t idx = 0; idx < g.size; ++idx) {
    if (std::abs(full[idx]) <= cut) continue;
    auto mi = g.unflat(idx);
    int k0 = g.wavenumber(mi[0]);
    int k1 = g.dim == 2 ? g.wavenumber(mi[1]) : 0;
    rep.modes.push_back({k0, k1});
    rep.coeff.push_back(full[idx]);
  }
  return rep;
}

double trig_eval(const TrigRep& rep, double x0, double x1) {
  PhaseTable pt(rep_kmax(rep), x0, x1, rep.grid.dim);
  double acc = 0.0;
  for (std::size_t i = 0; i < rep.modes.size(); ++i)
    acc += (rep.coeff[i] * pt.at(rep.modes[i][0], rep.modes[i][1], rep.grid.dim)).real();
  return acc;
}

double lambda_direct(const ScalarField& f, std::size_t idx, double alpha,
                     const QuadratureSpec& quad) {
  const TorusGrid& g = f.grid;
  auto ctx = get_quad(g, alpha, quad);
  TrigRep rep = trig_rep(f);
  auto x = g.point(idx);
  const double fx = f.values[idx];

  // inner ball, free kernel: sum over modes of c_k e^{ik.x} M(|k|)
  MomentCache M{g.dim, alpha, ctx->r0, {}};
  long long j2max = 0;
  PhaseTable pt(rep_kmax(rep), x[0], x[1], g.dim);
  std::complex<double> inner = 0.0;
  for (std::size_t i = 0; i < rep.modes.size(); ++i) {
    long long k0 = rep.modes[i][0], k1 = rep.modes[i][1];
    long long j2 = k0 * k0 + k1 * k1;
    if (j2 == 0) continue;
    j2max = std::max(j2max, j2);
    inner += rep.coeff[i] * pt.at(rep.modes[i][0], rep.modes[i][1], g.dim) *
             M(j2);
  }
  check_moment_band(*ctx, j2max);

  double acc = inner.real();
  for (std::size_t i = 0; i < ctx->ball_z.size(); ++i)
    acc += ctx->ball_wrem[i] *
           (fx - trig_eval(rep, x[0] + ctx->ball_z[i][0], x[1] + ctx->ball_z[i][1]));
  for (std::size_t i = 0; i < ctx->outer_z.size(); ++i)
    acc += ctx->outer_wphi[i] *
           (fx - trig_eval(rep, x[0] + ctx->outer_z[i][0], x[1] + ctx->outer_z[i][1]));
  return normalization_constant(g.dim, alpha) * acc;
}

double commutator_direct(const ScalarField& u, const ScalarField& rho,
                         std::size_t idx, double alpha, const QuadratureSpec& quad) {
  const TorusGrid& g = u.grid;
  auto ctx = get_quad(g, alpha, quad);
  TrigRep ru = trig_rep(u);
  TrigRep rr = trig_rep(rho);
  auto x = g.point(idx);
  const double ux = u.values[idx];

  // modes of w(z) = (u(x+z) - u(x)) rho(x+z):
  //   c_j = e^{ij.x} [ (u_hat * rho_hat)_j - u(x) rho_hat_j ]
  const int ku = rep_kmax(ru), kr = rep_kmax(rr);
  const int kw = ku + kr;
  const int W = 2 * kw + 1;
  std::vector<std::complex<double>> conv(static_cast<std::size_t>(W) * W, 0.0);
  auto slot = [&](int j0, int j1) -> std::complex<double>& {
    return conv[static_cast<std::size_t>(j0 + kw) * W + (j1 + kw)];
  };
  for (std::size_t a = 0; a < ru.modes.size(); ++a)
    for (std::size_t b = 0; b < rr.modes.size(); ++b)
      slot(ru.modes[a][0] + rr.modes[b][0], ru.modes[a][1] + rr.modes[b][1]) +=
          ru.coeff[a] * rr.coeff[b];
  for (std::size_t b = 0; b < rr.modes.size(); ++b)
    slot(rr.modes[b][0], rr.modes[b][1]) -= ux * rr.coeff[b];

  MomentCache M{g.dim, alpha, ctx->r0, {}};
  PhaseTable pt(kw, x[0], x[1], g.dim);
  std::complex<double> inner = 0.0;
  long long j2max = 0;
  for (int j0 = -kw; j0 <= kw; ++j0) {
    for (int j1 = (g.dim == 2 ? -kw : 0); j1 <= (g.dim == 2 ? kw : 0); ++j1) {
      const std::complex<double>& c = slot(j0, j1);
      long long j2 = static_cast<long long>(j0) * j0 + static_cast<long long>(j1) * j1;
      if (j2 == 0 || std::norm(c) == 0.0) continue;
      j2max = std::max(j2max, j2);
      inner += c * pt.at(j0, j1, g.dim) * M(j2);
    }
  }
  check_moment_band(*ctx, j2max);

  double acc = -inner.real();
  auto w_at = [&](const std::array<double, 2>& z) {
    double uz = trig_eval(ru, x[0] + z[0], x[1] + z[1]);
    double rz = trig_eval(rr, x[0] + z[0], x[1] + z[1]);
    return (uz - ux) * rz;
  };
  for (std::size_t i = 0; i < ctx->ball_z.size(); ++i)
    acc += ctx->ball_wrem[i] * w_at(ctx->ball_z[i]);
  for (std::size_t i = 0; i < ctx->outer_z.size(); ++i)
    acc += ctx->outer_wphi[i] * w_at(ctx->outer_z[i]);
  return normalization_constant(g.dim, alpha) * acc;
}

double d_alpha_direct(const std::vector<ScalarField>& gcomp, std::size_t idx,
                      double alpha, const QuadratureSpec& quad) {
  if (gcomp.empty()) throw ValidationError("d_alpha_direct needs a nonempty field");
  const TorusGrid& g = gcomp[0].grid;
  auto ctx = get_quad(g, alpha, quad);
  auto x = g.point(idx);

  std::vector<TrigRep> reps;
  reps.reserve(gcomp.size());
  int kg = 0;
  for (const auto& comp : gcomp) {
    reps.push_back(trig_rep(comp));
    kg = std::max(kg, rep_kmax(reps.back()));
  }
  const int kw = 2 * kg;
  const int W = 2 * kw + 1;
  std::vector<std::complex<double>> conv(static_cast<std::size_t>(W) * W, 0.0);
  auto slot = [&](int j0, int j1) -> std::complex<double>& {
    return conv[static_cast<std::size_t>(j0 + kw) * W + (j1 + kw)];
  };
  // v(z) = sum_c (g_c(x+z) - g_c(x))^2: self-convolution of the shifted-mode
  // arrays beta_{c,k} = c_{c,k} e^{ik.x} with the zero mode reduced by g_c(x)
  PhaseTable pt(kg, x[0], x[1], g.dim);
  for (std::size_t c = 0; c < reps.size(); ++c) {
    const TrigRep& rep = reps[c];
    std::vector<std::complex<double>> beta(rep.modes.size());
    bool has_zero = false;
    for (std::size_t i = 0; i < rep.modes.size(); ++i) {
      beta[i] = rep.coeff[i] * pt.at(rep.modes[i][0], rep.modes[i][1], g.dim);
      if (rep.modes[i][0] == 0 && rep.modes[i][1] == 0) {
        beta[i] -= gcomp[c].values[idx];
        has_zero = true;
      }
    }
    std::vector<std::array<int, 2>> modes = rep.modes;
    if (!has_zero) {
      modes.push_back({0, 0});
      beta.push_back(-gcomp[c].values[idx]);
    }
    for (std::size_t a = 0; a < modes.size(); ++a)
      for (std::size_t b = 0; b < modes.size(); ++b)
        slot(modes[a][0] + modes[b][0], modes[a][1] + modes[b][1]) += beta[a] * beta[b];
  }

  MomentCache M{g.dim, alpha, ctx->r0, {}};
  std::complex<double> inner = 0.0;
  long long j2max = 0;
  for (int j0 = -kw; j0 <= kw; ++j0) {
    for (int j1 = (g.dim == 2 ? -kw : 0); j1 <= (g.dim == 2 ? kw : 0); ++j1) {
      const std::complex<double>& c = slot(j0, j1);
      long long j2 = static_cast<long long>(j0) * j0 + static_cast<long long>(j1) * j1;
      if (j2 == 0 || std::norm(c) == 0.0) continue;
      j2max = std::max(j2max, j2);
      inner += c * M(j2);
    }
  }
  check_moment_band(*ctx, j2max);

  double acc = -inner.real();
  auto v_at = [&](const std::array<double, 2>& z) {
    double s = 0.0;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      double d = trig_eval(reps[c], x[0] + z[0], x[1] + z[1]) - gcomp[c].values[idx];
      s += d * d;
    }
    return s;
  };
  for (std::size_t i = 0; i < ctx->ball_z.size(); ++i)
    acc += ctx->ball_wrem[i] * v_at(ctx->ball_z[i]);
  for (std::size_t i = 0; i < ctx->outer_z.size(); ++i)
    acc += ctx->outer_wphi[i] * v_at(ctx->outer_z[i]);
  return normalization_constant(g.dim, alpha) * acc;
}

ScalarField d_alpha_field(const ScalarField& f, double alpha) {
  const TorusGrid& g = f.grid;
  std::vector<ScalarField> grad;
  ScalarField grad2(g);
  for (int axis = 0; axis < g.dim; ++axis) {
    grad.push_back(partial_derivative(f, axis));
    for (std::size_t i = 0; i < g.size; ++i)
      grad2.values[i] += grad.back().values[i] * grad.back().values[i];
  }
  ScalarField lam_grad2 = fractional_laplacian(grad2, alpha);
  ScalarField out(g);
  for (int axis = 0; axis < g.dim; ++axis) {
    ScalarField lam = fractional_laplacian(grad[axis], alpha);
    for (std::size_t i = 0; i < g.size; ++i)
      out.values[i] += 2.0 * grad[axis].values[i] * lam.values[i];
  }
  for (std::size_t i = 0; i < g.size; ++i) out.values[i] -= lam_grad2.values[i];
  return out;
}

double nl_max_principle_constant(const std::vector<ScalarField>& samples, double alpha) {
  check_alpha(alpha);
  if (samples.empty()) throw ValidationError("empty sample suite");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : samples) {
    const TorusGrid& g = f.grid;
    double fsup = max_abs(f);
    if (fsup == 0.0) continue;
    ScalarField D = d_alpha_field(f, alpha);
    std::vector<ScalarField> grad;
    for (int axis = 0; axis < g.dim; ++axis) grad.push_back(partial_derivative(f, axis));
    for (std::size_t i = 0; i < g.size; ++i) {
      double g2 = 0.0;
      for (const auto& comp : grad) g2 += comp.values[i] * comp.values[i];
      double gn = std::sqrt(g2);
      if (gn < 1e-8) continue;
      double ratio = D.values[i] * std::pow(fsup, alpha) / std::pow(gn, 2.0 + alpha);
      best = std::min(best, ratio);
    }
  }
  if (!std::isfinite(best))
    throw NumericalError("no admissible gradient points in sample suite");
  return best;
}

}  // namespace flockspec
