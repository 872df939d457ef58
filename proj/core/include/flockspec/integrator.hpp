#pragma once

#include <functional>
#include <string>

#include "flockspec/dynamics.hpp"

namespace flockspec {

struct StepPolicy {
  double cfl_adv = 0.4;
  double cfl_diss = 0.4;
  double dt_max = 0.05;
};

// Largest stable step for the current state: advective h / max|u| against the
// damping rate rho_max k_max^alpha + eps k_max^2 of the fastest kept mode
// (k_max = N/3 after dealiasing), both scaled by their CFL numbers and capped
// by dt_max.
double stable_dt(const FlowState& s, const FlowParams& p, const StepPolicy& pol);

// One Shu-Osher SSP-RK3 step of size dt.
FlowState step_ssprk3(const FlowState& s, const FlowParams& p, double dt);

enum class RunStatus { Finished, Aborted };

struct RunResult {
  FlowState state;
  RunStatus status = RunStatus::Finished;
  std::size_t steps = 0;
  std::string abort_reason;
};

// Integrate to time T with adaptive steps. The observer fires on the initial
// state and after every accepted step. Numerical breakdowns (vacuum,
// non-finite values) end the run with RunStatus::Aborted instead of throwing;
// configuration mistakes still throw ValidationError.
RunResult run_flow(FlowState s, const FlowParams& p, const StepPolicy& pol, double T,
                   const std::function<void(const FlowState&, std::size_t)>& observer = {});

}  // namespace flockspec
