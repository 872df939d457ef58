#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "flockspec/harness.hpp"

namespace flockspec {

namespace {

namespace fs = std::filesystem;

int thread_budget() {
  const char* env = std::getenv("FLOCKSPEC_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return std::min(std::max(n, 1), 16);
}

void apply_axis(SimConfig& c, const std::string& axis, const std::string& value) {
  std::size_t pos = 0;
  try {
    if (axis == "alpha") {
      c.alpha = std::stod(value, &pos);
    } else if (axis == "eps") {
      c.eps = std::stod(value, &pos);
    } else if (axis == "scenario.a") {
      c.scenario.a = std::stod(value, &pos);
    } else if (axis == "N") {
      c.N = static_cast<int>(std::stoll(value, &pos));
    }
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != value.size())
    throw ValidationError("sweep value '" + value + "' for axis '" + axis +
                          "' is not a number");
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

}  // namespace

int cmd_sweep(const SimConfig& base, const std::string& axis,
              const std::vector<std::string>& values, SweepResult* result) {
  if (axis != "alpha" && axis != "N" && axis != "eps" && axis != "scenario.a")
    throw ValidationError("unknown sweep axis '" + axis +
                          "' (expected alpha, N, eps, or scenario.a)");
  if (values.empty()) throw ValidationError("sweep needs at least one value");

  const fs::path dir(base.output.directory);
  fs::create_directories(dir);

  std::vector<SweepRow> rows(values.size());

  auto run_row = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = values[i];
    SimConfig c = base;
    c.output.directory = (dir / (axis + "=" + values[i])).string();
    try {
      apply_axis(c, axis, values[i]);
      RunArtifacts art;
      cmd_run(c, &art);
      row.status = art.status;
      row.detail = art.abort_reason;
      nlohmann::json summary;
      std::ifstream(art.summary_path) >> summary;
      row.u_bar = summary["u_bar"].get<double>();
      row.u_bar_measured = summary["u_bar_measured"].get<double>();
      row.final_amplitude = summary["final_amplitude"].get<double>();
      row.decay_ok = summary["decay"]["ok"].get<bool>();
      row.decay_rate = summary["decay"]["rate"].get<double>();
    } catch (const ValidationError& e) {
      row.status = "invalid";
      row.detail = e.what();
    }
  };

  // rows land in preassigned slots, so the table is deterministic however
  // the workers interleave
  const int budget = std::min<std::size_t>(thread_budget(), values.size());
  if (budget <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) run_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < budget; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++) run_row(i);
      });
    for (std::thread& t : workers) t.join();
  }

  const fs::path table_path = dir / "sweep.csv";
  {
    std::ofstream table(table_path, std::ios::trunc);
    table << "axis,value,status,u_bar,u_bar_measured,final_amplitude,decay_rate,"
             "decay_ok,detail\n";
    char buf[160];
    for (const SweepRow& row : rows) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%d,", row.u_bar,
                    row.u_bar_measured, row.final_amplitude, row.decay_rate,
                    row.decay_ok ? 1 : 0);
      table << axis << "," << sanitize(row.value) << "," << row.status << buf
            << sanitize(row.detail) << "\n";
    }
  }

  bool any_finished = false;
  bool any_aborted = false;
  for (const SweepRow& row : rows) {
    any_finished = any_finished || row.status == "finished";
    any_aborted = any_aborted || row.status == "aborted";
  }
  if (result) {
    result->rows = std::move(rows);
    result->table_path = table_path.string();
  }
  // rows that fail are data; the sweep itself only fails when nothing ran
  if (any_finished) return kExitOk;
  return any_aborted ? kExitNumerical : kExitValidation;
}

}  // namespace flockspec
