#include "flockspec/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flockspec/scenarios.hpp"

namespace flockspec {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ValidationError(key + " = '" + v + "' is not a number");
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ValidationError(key + " = '" + v + "' is not an integer");
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long x = std::stoull(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ValidationError(key + " = '" + v + "' is not an unsigned integer");
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ValidationError(key + " needs at least one value");
  return out;
}

void apply_top(SimConfig& c, const std::string& key, const std::string& v) {
  if (key == "alpha") {
    c.alpha = to_double(key, v);
  } else if (key == "eps") {
    c.eps = to_double(key, v);
  } else if (key == "dim") {
    c.dim = static_cast<int>(to_int(key, v));
  } else if (key == "N") {
    c.N = static_cast<int>(to_int(key, v));
  } else if (key == "T") {
    c.T = to_double(key, v);
  } else if (key == "mode") {
    if (v == "unidirectional") {
      c.mode = FlowMode::Unidirectional;
    } else if (v == "vector") {
      c.mode = FlowMode::Vector;
    } else {
      throw ValidationError("mode = '" + v + "' (expected unidirectional or vector)");
    }
  } else if (key == "seed") {
    c.seed = to_u64(key, v);
  } else if (key == "scenario") {
    c.scenario.name = v;
  } else {
    throw ValidationError("unknown key '" + key + "'");
  }
}

void apply_scenario(SimConfig& c, const std::string& key, const std::string& v) {
  if (key == "a") {
    c.scenario.a = to_double(key, v);
  } else if (key == "b") {
    c.scenario.b = to_double(key, v);
  } else {
    throw ValidationError("unknown key '" + key + "' in [scenario]");
  }
}

void apply_policy(SimConfig& c, const std::string& key, const std::string& v) {
  if (key == "cfl_adv") {
    c.policy.cfl_adv = to_double(key, v);
  } else if (key == "cfl_diss") {
    c.policy.cfl_diss = to_double(key, v);
  } else if (key == "dt_max") {
    c.policy.dt_max = to_double(key, v);
  } else {
    throw ValidationError("unknown key '" + key + "' in [policy]");
  }
}

void apply_diagnostics(SimConfig& c, const std::string& key, const std::string& v) {
  if (key == "sobolev_s") {
    c.diagnostics.sobolev_s = to_double_list(key, v);
  } else if (key == "gamma") {
    c.diagnostics.holder_gamma = to_double(key, v);
  } else if (key == "fit_window") {
    c.fit_window = to_double(key, v);
  } else {
    throw ValidationError("unknown key '" + key + "' in [diagnostics]");
  }
}

void apply_output(SimConfig& c, const std::string& key, const std::string& v) {
  if (key == "dir") {
    c.output.directory = v;
  } else if (key == "stride") {
    c.output.stride = static_cast<int>(to_int(key, v));
  } else if (key == "records_stride") {
    c.output.records_stride = static_cast<int>(to_int(key, v));
  } else if (key == "format") {
    c.output.format = v;
  } else {
    throw ValidationError("unknown key '" + key + "' in [output]");
  }
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  SimConfig c;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "policy" && section != "diagnostics" &&
          section != "output")
        throw ValidationError("unknown section '[" + section + "]'");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(lineno) + " is not 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ValidationError("line " + std::to_string(lineno) + ": empty key");
    if (section.empty()) {
      apply_top(c, key, value);
    } else if (section == "scenario") {
      apply_scenario(c, key, value);
    } else if (section == "policy") {
      apply_policy(c, key, value);
    } else if (section == "diagnostics") {
      apply_diagnostics(c, key, value);
    } else {
      apply_output(c, key, value);
    }
  }
  validate_config(c);
  return c;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate_config(const SimConfig& c) {
  if (!(c.alpha > 0.0 && c.alpha < 2.0))
    throw ValidationError("alpha = " + fmt17(c.alpha) +
                          " outside admissible interval (0, 2)");
  if (!(c.eps >= 0.0)) throw ValidationError("eps must be nonnegative");
  if (c.dim != 1 && c.dim != 2) throw ValidationError("dim must be 1 or 2");
  if (c.N < 8 || (c.N & (c.N - 1)) != 0)
    throw ValidationError("N = " + std::to_string(c.N) +
                          " is not a power of two (minimum 8)");
  if (!(c.T >= 0.0)) throw ValidationError("T must be nonnegative");
  if (c.mode == FlowMode::Vector && c.dim != 2)
    throw ValidationError("vector mode requires dim = 2");
  if (!(c.scenario.a >= 0.0)) throw ValidationError("scenario a must be nonnegative");
  auto names = scenario_names();
  if (std::find(names.begin(), names.end(), c.scenario.name) == names.end())
    throw ValidationError("unknown scenario '" + c.scenario.name + "'");
  if (!(c.policy.cfl_adv > 0.0) || !(c.policy.cfl_diss > 0.0))
    throw ValidationError("CFL numbers must be positive");
  if (!(c.policy.dt_max > 0.0)) throw ValidationError("dt_max must be positive");
  if (c.diagnostics.sobolev_s.empty())
    throw ValidationError("sobolev_s needs at least one exponent");
  for (double s : c.diagnostics.sobolev_s)
    if (!(s >= 0.0)) throw ValidationError("sobolev exponents must be nonnegative");
  if (!(c.diagnostics.holder_gamma > 0.0 && c.diagnostics.holder_gamma < 1.0))
    throw ValidationError("gamma = " + fmt17(c.diagnostics.holder_gamma) +
                          " outside (0, 1)");
  if (!(c.fit_window > 0.0 && c.fit_window <= 1.0))
    throw ValidationError("fit_window = " + fmt17(c.fit_window) + " outside (0, 1]");
  if (c.output.stride < 1 || c.output.records_stride < 1)
    throw ValidationError("output strides must be at least 1");
  if (c.output.format != "csv" && c.output.format != "ndjson" &&
      c.output.format != "both")
    throw ValidationError("format = '" + c.output.format +
                          "' (expected csv, ndjson, or both)");
  if (c.output.directory.empty()) throw ValidationError("output dir must be nonempty");
}

std::string serialize_config(const SimConfig& c) {
  std::ostringstream o;
  o << "alpha = " << fmt17(c.alpha) << "\n";
  o << "eps = " << fmt17(c.eps) << "\n";
  o << "dim = " << c.dim << "\n";
  o << "N = " << c.N << "\n";
  o << "T = " << fmt17(c.T) << "\n";
  o << "mode = " << (c.mode == FlowMode::Vector ? "vector" : "unidirectional") << "\n";
  o << "seed = " << c.seed << "\n";
  o << "scenario = " << c.scenario.name << "\n\n";
  o << "[scenario]\n";
  o << "a = " << fmt17(c.scenario.a) << "\n";
  o << "b = " << fmt17(c.scenario.b) << "\n\n";
  o << "[policy]\n";
  o << "cfl_adv = " << fmt17(c.policy.cfl_adv) << "\n";
  o << "cfl_diss = " << fmt17(c.policy.cfl_diss) << "\n";
  o << "dt_max = " << fmt17(c.policy.dt_max) << "\n\n";
  o << "[diagnostics]\n";
  o << "sobolev_s = ";
  for (std::size_t i = 0; i < c.diagnostics.sobolev_s.size(); ++i)
    o << (i ? ", " : "") << fmt17(c.diagnostics.sobolev_s[i]);
  o << "\n";
  o << "gamma = " << fmt17(c.diagnostics.holder_gamma) << "\n";
  o << "fit_window = " << fmt17(c.fit_window) << "\n\n";
  o << "[output]\n";
  o << "dir = " << c.output.directory << "\n";
  o << "stride = " << c.output.stride << "\n";
  o << "records_stride = " << c.output.records_stride << "\n";
  o << "format = " << c.output.format << "\n";
  return o.str();
}

}  // namespace flockspec
