#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "flockspec/harness.hpp"
#include "flockspec/output.hpp"
#include "flockspec/scenarios.hpp"

namespace flockspec {

namespace {

namespace fs = std::filesystem;

// memory cap on states retained for the limiting-profile analysis; the list
// is thinned by doubling its stride, so the initial state always survives
constexpr std::size_t kKeepCap = 512;

struct SeriesPoint {
  double t;
  double amplitude;
};

}  // namespace

int cmd_run(const SimConfig& c, RunArtifacts* artifacts) {
  validate_config(c);
  const fs::path dir(c.output.directory);
  fs::create_directories(dir);

  const bool want_csv = c.output.format == "csv" || c.output.format == "both";
  const bool want_nd = c.output.format == "ndjson" || c.output.format == "both";
  std::ofstream csv;
  std::ofstream nd;
  if (want_csv) {
    csv.open(dir / "records.csv", std::ios::trunc);
    csv << csv_header(c) << "\n";
  }
  if (want_nd) nd.open(dir / "records.ndjson", std::ios::trunc);
  std::ofstream snaps(dir / "snapshots.bin", std::ios::binary | std::ios::trunc);

  FlowState initial = make_scenario(c);
  const ConservedPair first = conserved(initial);
  const FlowParams params{c.alpha, c.eps};

  std::vector<FlowState> kept;
  std::vector<SeriesPoint> series;
  double mass_drift = 0.0;
  double momentum_drift = 0.0;
  double mean_e_peak = 0.0;
  std::size_t keep_stride = 1;
  std::size_t snap_count = 0;
  std::size_t last_recorded = 0;
  std::size_t last_snapped = 0;
  double prev_time = 0.0;
  double last_dt = 0.0;

  auto emit_record = [&](const FlowState& s, double dt_used) {
    DiagnosticsRecord r = measure(s, c.alpha, c.diagnostics, dt_used);
    if (want_csv) csv << csv_row(r) << "\n";
    if (want_nd) nd << ndjson_row(r, c) << "\n";
    series.push_back({r.t, r.amplitude});
    mass_drift = std::max(mass_drift, std::abs(r.mass - first.mass));
    momentum_drift = std::max(momentum_drift, std::abs(r.momentum[0] - first.momentum[0]));
    if (r.momentum_components == 2)
      momentum_drift =
          std::max(momentum_drift, std::abs(r.momentum[1] - first.momentum[1]));
    mean_e_peak = std::max(mean_e_peak, std::abs(entropy_stats(s, c.alpha).mean_e));
  };

  auto emit_snapshot = [&](const FlowState& s) {
    write_snapshot(snaps, s, c.alpha);
    if (snap_count % keep_stride == 0) {
      kept.push_back(s);
      if (kept.size() > kKeepCap) {
        for (std::size_t i = 0; 2 * i < kept.size(); ++i) kept[i] = kept[2 * i];
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>((kept.size() + 1) / 2),
                   kept.end());
        keep_stride *= 2;
      }
    }
    ++snap_count;
  };

  auto observer = [&](const FlowState& s, std::size_t step) {
    last_dt = s.time - prev_time;
    prev_time = s.time;
    if (step % static_cast<std::size_t>(c.output.records_stride) == 0) {
      emit_record(s, step == 0 ? 0.0 : last_dt);
      last_recorded = step;
    }
    if (step % static_cast<std::size_t>(c.output.stride) == 0) {
      emit_snapshot(s);
      last_snapped = step;
    }
  };

  RunResult result = run_flow(std::move(initial), params, c.policy, c.T, observer);

  // the last accepted state always lands in the records and the snapshots,
  // whatever the strides
  if (result.steps != last_recorded) emit_record(result.state, last_dt);
  if (result.steps != last_snapped) emit_snapshot(result.state);

  const bool aborted = result.status == RunStatus::Aborted;
  const ConservedPair last = conserved(result.state);
  const double u_bar = first.momentum[0] / first.mass;
  const double u_bar_measured = last.momentum[0] / last.mass;
  const double a0 = series.front().amplitude;
  const double a_final = series.back().amplitude;

  std::vector<double> ts(series.size());
  std::vector<double> as(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    ts[i] = series[i].t;
    as[i] = series[i].amplitude;
  }
  DecayFit fit = fit_decay_rate(ts, as, c.fit_window);
  std::string note;
  if (!fit.ok)
    note = (a_final <= 1e-10 * std::max(1.0, a0))
               ? "degenerate: already flocked (" + fit.reason + ")"
               : fit.reason;

  nlohmann::ordered_json summary;
  summary["status"] = aborted ? "aborted" : "finished";
  summary["abort_reason"] = result.abort_reason;
  summary["steps"] = result.steps;
  summary["final_time"] = result.state.time;
  summary["u_bar"] = u_bar;
  summary["u_bar_measured"] = u_bar_measured;
  summary["mass_drift_rel"] = mass_drift / std::abs(first.mass);
  summary["momentum_drift_abs"] = momentum_drift;
  if (std::abs(first.momentum[0]) > 1e-12)
    summary["momentum_drift_rel"] = momentum_drift / std::abs(first.momentum[0]);
  else
    summary["momentum_drift_rel"] = nullptr;
  summary["mean_e_drift"] = mean_e_peak;
  summary["initial_amplitude"] = a0;
  summary["final_amplitude"] = a_final;
  summary["decay"] = {{"ok", fit.ok},
                      {"rate", fit.rate},
                      {"intercept", fit.intercept},
                      {"residual", fit.residual},
                      {"note", note}};
  if (kept.size() >= 3) {
    LimitingProfile lp = limiting_profile(kept);
    summary["limiting"] = {{"u_bar", lp.u_bar},
                           {"residual_rate", lp.residual_fit.rate},
                           {"residual_fit_ok", lp.residual_fit.ok}};
  }

  const fs::path summary_path = dir / "summary.json";
  std::ofstream(summary_path) << summary.dump(2) << "\n";

  if (artifacts) {
    artifacts->status = aborted ? "aborted" : "finished";
    artifacts->abort_reason = result.abort_reason;
    artifacts->steps = result.steps;
    artifacts->records_path =
        (want_csv ? dir / "records.csv" : dir / "records.ndjson").string();
    artifacts->summary_path = summary_path.string();
  }
  return aborted ? kExitNumerical : kExitOk;
}

}  // namespace flockspec
