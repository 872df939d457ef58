#pragma once

#include <string>
#include <vector>

#include "flockspec/dynamics.hpp"

namespace flockspec {

struct DiagnosticsOptions {
  std::vector<double> sobolev_s = {1.0};
  double holder_gamma = 0.5;
};

// One time-series row. Field order here is the CSV/NDJSON column contract.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};
  int momentum_components = 1;
  double amplitude = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double sup_q = 0.0;
  double sup_e = 0.0;
  double grad_u_inf = 0.0;
  double grad_rho_inf = 0.0;
  double dt = 0.0;
  std::vector<double> sobolev_u;
  double holder_rho = 0.0;
};

struct ConservedPair {
  double mass = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};
  int components = 1;
};

// grid quadrature h^n * sum, spectrally exact for smooth integrands
ConservedPair conserved(const FlowState& s);

// max |u(x) - u(y)|: exact range in the scalar modes; vector mode scans all
// pairs of a coarsened sample (at most 4096 points enter the O(M^2) loop)
double amplitude(const FlowState& s);

struct EntropyStats {
  double sup_e = 0.0;
  double sup_q = 0.0;
  double mean_e = 0.0;
};
EntropyStats entropy_stats(const FlowState& s, double alpha);

// Parseval-anchored H^s norm: ((2pi)^n sum (1+|k|^2)^s |c_k|^2)^{1/2}
double sobolev_norm(const ScalarField& f, double s);

double gradient_sup(const ScalarField& f);  // max over axes and points of |d_a f|

// discrete C^gamma proxy: max |f(x+o) - f(x)| / |o h|^gamma over power-of-two
// stride offsets with torus distance at most pi/2; 0 < gamma < 1
double holder_seminorm(const ScalarField& f, double gamma);

DiagnosticsRecord measure(const FlowState& s, double alpha, const DiagnosticsOptions& opt,
                          double dt_used);

struct DecayFit {
  bool ok = false;
  std::string reason;
  double rate = 0.0;       // decay exponent (negated log-slope)
  double intercept = 0.0;  // fitted log-value at t = 0
  double residual = 0.0;   // RMS of log residuals over the window
  double t_begin = 0.0;
  double t_end = 0.0;
};

// least squares of log(value) against t over the trailing window; refuses
// (ok = false, reason set) on nonpositive values or too few points
DecayFit fit_decay_rate(const std::vector<double>& t, const std::vector<double>& value,
                        double window_fraction = 0.5);

// rho resampled in the frame moving with speed u_bar along axis 0
ScalarField traveling_frame(const FlowState& s, double u_bar);

struct LimitingProfile {
  ScalarField rho_bar;
  double u_bar = 0.0;
  std::vector<double> times;              // t_{i+1} stamps of the residuals
  std::vector<double> cauchy_residuals;   // sup |shifted rho_{i+1} - shifted rho_i|
  DecayFit residual_fit;
};

// Cauchy-sequence extraction of the limiting shifted profile; u_bar is the
// conserved ratio P0/M0 of the first snapshot. Needs >= 3 snapshots.
LimitingProfile limiting_profile(const std::vector<FlowState>& trajectory);

}  // namespace flockspec
