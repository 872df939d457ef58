#pragma once

#include <iosfwd>
#include <string>

#include "flockspec/config.hpp"

namespace flockspec {

// Fixed column prefix t,M,P,A,rho_min,rho_max,sup_q,sup_e,grad_u_inf,
// grad_rho_inf,dt then one sobolev_u_<s> column per configured s, holder_rho,
// and a trailing P2 column in 2D vector mode.
std::string csv_header(const SimConfig& c);
std::string csv_row(const DiagnosticsRecord& r);

// One JSON object per line, same field names as the CSV columns.
std::string ndjson_row(const DiagnosticsRecord& r, const SimConfig& c);

// Binary snapshot block: magic 'FSNP', format version, (dim, N, mode,
// components, alpha, t) header, then rho and each velocity component as
// row-major little-endian doubles.
void write_snapshot(std::ostream& os, const FlowState& s, double alpha);
FlowState read_snapshot(std::istream& is);

}  // namespace flockspec
