#include "flockspec/output.hpp"

#include <cstdio>
#include <cstring>
#include <istream>
#include <json.hpp>
#include <ostream>

namespace flockspec {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// column suffix for a Sobolev exponent: 1.0 -> "1", 0.5 -> "0.5"
std::string fmt_s(double s) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", s);
  return buf;
}

constexpr std::uint32_t kSnapshotVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw ValidationError("snapshot stream truncated");
  return v;
}

double get_f64(std::istream& is) {
  double v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw ValidationError("snapshot stream truncated");
  return v;
}

}  // namespace

std::string csv_header(const SimConfig& c) {
  std::string h = "t,M,P,A,rho_min,rho_max,sup_q,sup_e,grad_u_inf,grad_rho_inf,dt";
  for (double s : c.diagnostics.sobolev_s) h += ",sobolev_u_" + fmt_s(s);
  h += ",holder_rho";
  if (c.mode == FlowMode::Vector && c.dim == 2) h += ",P2";
  return h;
}

std::string csv_row(const DiagnosticsRecord& r) {
  std::string row = fmt17(r.t);
  for (double v : {r.mass, r.momentum[0], r.amplitude, r.rho_min, r.rho_max, r.sup_q,
                   r.sup_e, r.grad_u_inf, r.grad_rho_inf, r.dt})
    row += "," + fmt17(v);
  for (double v : r.sobolev_u) row += "," + fmt17(v);
  row += "," + fmt17(r.holder_rho);
  if (r.momentum_components == 2) row += "," + fmt17(r.momentum[1]);
  return row;
}

std::string ndjson_row(const DiagnosticsRecord& r, const SimConfig& c) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["M"] = r.mass;
  j["P"] = r.momentum[0];
  j["A"] = r.amplitude;
  j["rho_min"] = r.rho_min;
  j["rho_max"] = r.rho_max;
  j["sup_q"] = r.sup_q;
  j["sup_e"] = r.sup_e;
  j["grad_u_inf"] = r.grad_u_inf;
  j["grad_rho_inf"] = r.grad_rho_inf;
  j["dt"] = r.dt;
  const auto& exps = c.diagnostics.sobolev_s;
  for (std::size_t i = 0; i < r.sobolev_u.size() && i < exps.size(); ++i)
    j["sobolev_u_" + fmt_s(exps[i])] = r.sobolev_u[i];
  j["holder_rho"] = r.holder_rho;
  if (r.momentum_components == 2) j["P2"] = r.momentum[1];
  return j.dump();
}

// Blocks assume a little-endian host; the targets this tool runs on are.
void write_snapshot(std::ostream& os, const FlowState& s, double alpha) {
  os.write("FSNP", 4);
  put_u32(os, kSnapshotVersion);
  put_u32(os, static_cast<std::uint32_t>(s.grid.dim));
  put_u32(os, static_cast<std::uint32_t>(s.grid.n));
  put_u32(os, s.mode == FlowMode::Vector ? 1 : 0);
  put_u32(os, static_cast<std::uint32_t>(s.u.size()));
  put_f64(os, alpha);
  put_f64(os, s.time);
  os.write(reinterpret_cast<const char*>(s.rho.values.data()),
           static_cast<std::streamsize>(s.grid.size * sizeof(double)));
  for (const ScalarField& comp : s.u)
    os.write(reinterpret_cast<const char*>(comp.values.data()),
             static_cast<std::streamsize>(s.grid.size * sizeof(double)));
}

FlowState read_snapshot(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "FSNP", 4) != 0)
    throw ValidationError("stream does not start with a snapshot block");
  std::uint32_t version = get_u32(is);
  if (version != kSnapshotVersion)
    throw ValidationError("unsupported snapshot version " + std::to_string(version));
  int dim = static_cast<int>(get_u32(is));
  int n = static_cast<int>(get_u32(is));
  FlowMode mode = get_u32(is) == 1 ? FlowMode::Vector : FlowMode::Unidirectional;
  int components = static_cast<int>(get_u32(is));
  get_f64(is);  // alpha rides along for external consumers
  double time = get_f64(is);

  TorusGrid g = make_grid(dim, n);
  if (components != velocity_components(g, mode))
    throw ValidationError("snapshot component count does not match its mode");
  FlowState s(g, mode);
  s.time = time;
  auto read_values = [&](std::vector<double>& dst) {
    is.read(reinterpret_cast<char*>(dst.data()),
            static_cast<std::streamsize>(g.size * sizeof(double)));
    if (!is) throw ValidationError("snapshot stream truncated");
  };
  read_values(s.rho.values);
  for (ScalarField& comp : s.u) read_values(comp.values);
  return s;
}

}  // namespace flockspec
