#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flockspec/config.hpp"

namespace flockspec {

// Process exit codes shared by the subcommands and the CLI wrapper.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerifyFailed = 4;

struct RunArtifacts {
  std::string status;  // "finished" | "aborted"
  std::string abort_reason;
  std::size_t steps = 0;
  std::string records_path;   // primary records file (csv if both)
  std::string summary_path;
};

// Integrates the configured scenario and writes records, snapshots, and a
// summary under the output directory. Aborted runs still flush what they
// produced. Returns kExitOk or kExitNumerical.
int cmd_run(const SimConfig& c, RunArtifacts* artifacts = nullptr);

struct VerifyOptions {
  std::vector<double> alphas = {0.5, 1.0, 1.5};
  std::vector<int> grids = {32, 64};
  // test-only fault injection: flips the sign of the quadrature commutator so
  // the cross-check must trip
  bool inject_commutator_sign_error = false;
};

// Cross-checks the spectral operators against the quadrature oracles and the
// structural identities, one report line per check. Returns kExitOk or
// kExitVerifyFailed.
int cmd_verify(const VerifyOptions& opt, std::ostream& report);

struct SweepRow {
  std::string value;
  std::string status;
  std::string detail;  // abort reason or empty
  double u_bar = 0.0;
  double u_bar_measured = 0.0;
  double final_amplitude = 0.0;
  double decay_rate = 0.0;
  bool decay_ok = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string table_path;
};

// One run per value of the swept axis (alpha, N, eps, or scenario.a); a
// failing row is recorded and the sweep continues. FLOCKSPEC_THREADS > 1
// runs rows concurrently.
int cmd_sweep(const SimConfig& base, const std::string& axis,
              const std::vector<std::string>& values, SweepResult* result = nullptr);

}  // namespace flockspec
