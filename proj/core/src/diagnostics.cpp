#include "flockspec/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "flockspec/operators.hpp"

namespace flockspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cell_volume(const TorusGrid& g) { return std::pow(g.h, g.dim); }

}  // namespace

ConservedPair conserved(const FlowState& s) {
  ConservedPair out;
  out.components = static_cast<int>(s.u.size());
  double m = 0.0;
  for (double v : s.rho.values) m += v;
  out.mass = m * cell_volume(s.grid);
  for (std::size_t c = 0; c < s.u.size(); ++c) {
    double p = 0.0;
    for (std::size_t i = 0; i < s.grid.size; ++i)
      p += s.rho.values[i] * s.u[c].values[i];
    out.momentum[c] = p * cell_volume(s.grid);
  }
  return out;
}

double amplitude(const FlowState& s) {
  if (s.u.size() == 1) return field_max(s.u[0]) - field_min(s.u[0]);

  // coarsen so at most 4096 points enter the pairwise scan
  const TorusGrid& g = s.grid;
  int stride = 1;
  while ((g.n / stride) * (g.n / stride) > 4096) stride *= 2;
  std::vector<std::array<double, 2>> pts;
  for (int i0 = 0; i0 < g.n; i0 += stride)
    for (int i1 = 0; i1 < g.n; i1 += stride) {
      std::size_t idx = g.flat(i0, i1);
      pts.push_back({s.u[0].values[idx], s.u[1].values[idx]});
    }
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double d0 = pts[a][0] - pts[b][0];
      double d1 = pts[a][1] - pts[b][1];
      best = std::max(best, d0 * d0 + d1 * d1);
    }
  return std::sqrt(best);
}

EntropyStats entropy_stats(const FlowState& s, double alpha) {
  EntropyFields ef = entropy_fields(s, alpha);
  return {max_abs(ef.e), max_abs(ef.q), field_mean(ef.e)};
}

double sobolev_norm(const ScalarField& f, double s) {
  SpectralField F = forward_transform(f);
  return std::sqrt(std::pow(2.0 * kPi, f.grid.dim) * sobolev_sum(F, s));
}

double gradient_sup(const ScalarField& f) {
  double m = 0.0;
  for (int a = 0; a < f.grid.dim; ++a) m = std::max(m, max_abs(partial_derivative(f, a)));
  return m;
}

double holder_seminorm(const ScalarField& f, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ValidationError("holder exponent gamma = " + std::to_string(gamma) +
                          " outside (0, 1)");
  const TorusGrid& g = f.grid;
  double best = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    for (int o = 1; o <= g.n / 4; o *= 2) {
      double denom = std::pow(o * g.h, gamma);
      double diff = 0.0;
      if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
          diff = std::max(diff, std::abs(f.values[static_cast<std::size_t>((i + o) % g.n)] -
                                         f.values[static_cast<std::size_t>(i)]));
      } else {
        for (int i0 = 0; i0 < g.n; ++i0)
          for (int i1 = 0; i1 < g.n; ++i1) {
            std::size_t from = g.flat(i0, i1);
            std::size_t to = axis == 0 ? g.flat((i0 + o) % g.n, i1)
                                       : g.flat(i0, (i1 + o) % g.n);
            diff = std::max(diff, std::abs(f.values[to] - f.values[from]));
          }
      }
      best = std::max(best, diff / denom);
    }
  }
  return best;
}

DiagnosticsRecord measure(const FlowState& s, double alpha, const DiagnosticsOptions& opt,
                          double dt_used) {
  DiagnosticsRecord r;
  r.t = s.time;
  ConservedPair c = conserved(s);
  r.mass = c.mass;
  r.momentum = c.momentum;
  r.momentum_components = c.components;
  r.amplitude = amplitude(s);
  r.rho_min = field_min(s.rho);
  r.rho_max = field_max(s.rho);
  EntropyStats es = entropy_stats(s, alpha);
  r.sup_q = es.sup_q;
  r.sup_e = es.sup_e;
  for (const auto& comp : s.u) r.grad_u_inf = std::max(r.grad_u_inf, gradient_sup(comp));
  r.grad_rho_inf = gradient_sup(s.rho);
  r.dt = dt_used;
  r.sobolev_u.reserve(opt.sobolev_s.size());
  for (double sv : opt.sobolev_s) r.sobolev_u.push_back(sobolev_norm(s.u[0], sv));
  r.holder_rho = holder_seminorm(s.rho, opt.holder_gamma);
  return r;
}

DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& value,
                        double window_fraction) {
  if (t.size() != value.size())
    throw ValidationError("decay fit needs matching time and value sequences");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw ValidationError("fit window fraction must lie in (0, 1]");

  DecayFit fit;
  if (t.size() < 2) {
    fit.reason = "need at least two samples";
    return fit;
  }
  const double span = t.back() - t.front();
  const double cut = t.back() - window_fraction * span - 1e-12 * std::max(1.0, span);
  std::size_t first = 0;
  while (first < t.size() && t[first] < cut) ++first;
  if (t.size() - first < 2) {
    fit.reason = "fit window holds fewer than two samples";
    return fit;
  }
  for (std::size_t i = first; i < t.size(); ++i) {
    if (!(value[i] > 0.0)) {
      fit.reason = "nonpositive value at t = " + std::to_string(t[i]);
      return fit;
    }
  }

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double n = static_cast<double>(t.size() - first);
  for (std::size_t i = first; i < t.size(); ++i) {
    double y = std::log(value[i]);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  double det = n * stt - st * st;
  if (det <= 0.0) {
    fit.reason = "degenerate time span in fit window";
    return fit;
  }
  double slope = (n * sty - st * sy) / det;
  fit.intercept = (sy - slope * st) / n;
  fit.rate = -slope;
  double rss = 0.0;
  for (std::size_t i = first; i < t.size(); ++i) {
    double res = std::log(value[i]) - (fit.intercept + slope * t[i]);
    rss += res * res;
  }
  fit.residual = std::sqrt(rss / n);
  fit.t_begin = t[first];
  fit.t_end = t.back();
  fit.ok = true;
  return fit;
}

ScalarField traveling_frame(const FlowState& s, double u_bar) {
  if (s.mode != FlowMode::Unidirectional)
    throw ValidationError("traveling frame applies to unidirectional mode");
  return spectral_shift(s.rho, {u_bar * s.time, 0.0});
}

LimitingProfile limiting_profile(const std::vector<FlowState>& trajectory) {
  if (trajectory.size() < 3)
    throw ValidationError("limiting profile needs at least 3 snapshots");
  for (std::size_t i = 1; i < trajectory.size(); ++i)
    if (!(trajectory[i].time > trajectory[i - 1].time))
      throw ValidationError("snapshot times must increase");

  ConservedPair c0 = conserved(trajectory.front());
  if (c0.mass <= 0.0) throw ValidationError("nonpositive initial mass");

  LimitingProfile lp{ScalarField(trajectory.front().grid), c0.momentum[0] / c0.mass, {}, {},
                     {}};
  ScalarField prev = traveling_frame(trajectory.front(), lp.u_bar);
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    ScalarField cur = traveling_frame(trajectory[i], lp.u_bar);
    lp.times.push_back(trajectory[i].time);
    lp.cauchy_residuals.push_back(max_abs_diff(cur, prev));
    prev = cur;
  }
  lp.rho_bar = prev;
  lp.residual_fit = fit_decay_rate(lp.times, lp.cauchy_residuals);
  return lp;
}

}  // namespace flockspec
