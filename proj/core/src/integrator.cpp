#include "flockspec/integrator.hpp"

#include <cmath>

namespace flockspec {

namespace {

double max_speed(const FlowState& s) {
  double m = 0.0;
  for (const auto& comp : s.u) m = std::max(m, max_abs(comp));
  return m;
}

// y = a*y + b*z, componentwise over (rho, u)
void blend(FlowState& y, double a, const FlowState& z, double b) {
  for (std::size_t i = 0; i < y.grid.size; ++i)
    y.rho.values[i] = a * y.rho.values[i] + b * z.rho.values[i];
  for (std::size_t c = 0; c < y.u.size(); ++c)
    for (std::size_t i = 0; i < y.grid.size; ++i)
      y.u[c].values[i] = a * y.u[c].values[i] + b * z.u[c].values[i];
  y.time = a * y.time + b * z.time;
}

FlowState euler(const FlowState& s, const FlowParams& p, double dt) {
  FlowState d = rhs(s, p);
  FlowState out = s;
  blend(out, 1.0, d, dt);
  out.time = s.time + dt;
  return out;
}

bool finite_state(const FlowState& s) {
  if (!std::isfinite(max_abs(s.rho))) return false;
  for (const auto& comp : s.u)
    if (!std::isfinite(max_abs(comp))) return false;
  return true;
}

}  // namespace

double stable_dt(const FlowState& s, const FlowParams& p, const StepPolicy& pol) {
  if (pol.cfl_adv <= 0.0 || pol.cfl_diss <= 0.0 || pol.dt_max <= 0.0)
    throw ValidationError("step policy entries must be positive");
  double dt = pol.dt_max;
  double umax = max_speed(s);
  if (umax > 0.0) dt = std::min(dt, pol.cfl_adv * s.grid.h / umax);
  double kmax = static_cast<double>(s.grid.n) / 3.0;
  double damping = field_max(s.rho) * std::pow(kmax, p.alpha) + p.eps * kmax * kmax;
  dt = std::min(dt, pol.cfl_diss / (damping + 1e-30));
  return dt;
}

FlowState step_ssprk3(const FlowState& s, const FlowParams& p, double dt) {
  if (!(dt > 0.0)) throw ValidationError("step size must be positive");
  FlowState s1 = euler(s, p, dt);
  FlowState s2 = euler(s1, p, dt);
  blend(s2, 0.25, s, 0.75);
  FlowState s3 = euler(s2, p, dt);
  blend(s3, 2.0 / 3.0, s, 1.0 / 3.0);
  return s3;
}

RunResult run_flow(FlowState s, const FlowParams& p, const StepPolicy& pol, double T,
                   const std::function<void(const FlowState&, std::size_t)>& observer) {
  if (T < 0.0) throw ValidationError("final time must be nonnegative");
  if (pol.cfl_adv <= 0.0 || pol.cfl_diss <= 0.0 || pol.dt_max <= 0.0)
    throw ValidationError("step policy entries must be positive");

  RunResult r{std::move(s), RunStatus::Finished, 0, {}};
  if (observer) observer(r.state, 0);
  const double t_eps = 1e-12 * std::max(T, 1.0);
  while (r.state.time < T - t_eps) {
    double dt;
    try {
      dt = std::min(stable_dt(r.state, p, pol), T - r.state.time);
      r.state = step_ssprk3(r.state, p, dt);
    } catch (const NumericalError& err) {
      r.status = RunStatus::Aborted;
      r.abort_reason = err.what();
      if (r.abort_reason.find("vacuum") == std::string::npos)
        r.abort_reason += " (numerical breakdown)";
      return r;
    }
    ++r.steps;
    if (!finite_state(r.state)) {
      r.status = RunStatus::Aborted;
      r.abort_reason = "non-finite state after step " + std::to_string(r.steps);
      return r;
    }
    if (observer) observer(r.state, r.steps);
  }
  r.state.time = T;
  return r;
}

}  // namespace flockspec
