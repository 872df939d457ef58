#pragma once

#include <cstdint>
#include <string>

#include "flockspec/diagnostics.hpp"
#include "flockspec/integrator.hpp"

namespace flockspec {

struct ScenarioParams {
  std::string name = "bump1d";
  double a = 0.5;  // density perturbation amplitude
  double b = 1.0;  // velocity amplitude
};

struct OutputOptions {
  std::string directory = "out";
  int stride = 10;         // steps between retained snapshots
  int records_stride = 1;  // steps between time-series rows
  std::string format = "csv";  // csv | ndjson | both
};

struct SimConfig {
  double alpha = 1.5;
  double eps = 0.0;
  int dim = 1;
  int N = 256;
  double T = 20.0;
  FlowMode mode = FlowMode::Unidirectional;
  std::uint64_t seed = 1;
  ScenarioParams scenario;
  StepPolicy policy;
  DiagnosticsOptions diagnostics;
  double fit_window = 0.5;
  OutputOptions output;
};

// Plain key=value text with [scenario], [policy], [diagnostics], [output]
// sections; '#' comments. Unknown keys are rejected by name, and the result
// is fully validated.
SimConfig parse_config_text(const std::string& text);
SimConfig parse_config_file(const std::string& path);

// Emits text that parses back to an identical config.
std::string serialize_config(const SimConfig& c);

void validate_config(const SimConfig& c);

}  // namespace flockspec
