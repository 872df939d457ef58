#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "flockspec/harness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace flockspec;

  CLI::App app{"pseudospectral simulator for alignment hydrodynamics with singular kernels"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  int stride = 0;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "override the output directory");
    cmd->add_option("--stride", stride, "override the snapshot stride")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "records format: csv, ndjson, or both");
  };

  CLI::App* run = app.add_subcommand("run", "integrate a configured scenario");
  run->add_option("config", config_path, "config file")->required();
  add_overrides(run);

  CLI::App* verify =
      app.add_subcommand("verify", "cross-check the spectral operators against "
                                   "the quadrature oracles");
  std::vector<double> alphas;
  std::vector<int> grids;
  verify->add_option("--alpha", alphas, "exponents to check");
  verify->add_option("--N", grids, "grid sizes to check");

  CLI::App* sweep =
      app.add_subcommand("sweep", "one run per value of a config axis; "
                                  "FLOCKSPEC_THREADS caps row parallelism");
  std::string axis;
  std::string values;
  sweep->add_option("config", config_path, "base config file")->required();
  sweep->add_option("--axis", axis, "alpha, N, eps, or scenario.a")->required();
  sweep->add_option("--values", values, "comma-separated axis values")->required();
  add_overrides(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    auto load_config = [&]() {
      SimConfig c = parse_config_file(config_path);
      if (!out_dir.empty()) c.output.directory = out_dir;
      if (stride > 0) c.output.stride = stride;
      if (!format.empty()) c.output.format = format;
      validate_config(c);
      return c;
    };

    if (run->parsed()) {
      RunArtifacts art;
      int rc = cmd_run(load_config(), &art);
      if (art.status == "finished") {
        std::cout << "run finished: " << art.steps << " steps, records at "
                  << art.records_path << "\n";
      } else {
        std::cerr << "run aborted after " << art.steps << " steps: "
                  << art.abort_reason << "\n";
      }
      return rc;
    }

    if (verify->parsed()) {
      VerifyOptions opt;
      if (!alphas.empty()) opt.alphas = alphas;
      if (!grids.empty()) opt.grids = grids;
      return cmd_verify(opt, std::cout);
    }

    SweepResult res;
    int rc = cmd_sweep(load_config(), axis, split_csv(values), &res);
    for (const SweepRow& row : res.rows)
      std::cout << axis << "=" << row.value << ": " << row.status
                << (row.detail.empty() ? "" : " (" + row.detail + ")") << "\n";
    std::cout << "sweep table at " << res.table_path << "\n";
    return rc;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
