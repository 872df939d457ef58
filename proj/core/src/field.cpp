#include "flockspec/field.hpp"

#include <algorithm>
#include <cmath>

namespace flockspec {

ScalarField make_field(const TorusGrid& g,
                       const std::function<double(double, double)>& f) {
  ScalarField out(g);
  for (std::size_t i = 0; i < g.size; ++i) {
    auto x = g.point(i);
    out.values[i] = f(x[0], x[1]);
  }
  return out;
}

double field_min(const ScalarField& f) {
  return *std::min_element(f.values.begin(), f.values.end());
}

double field_max(const ScalarField& f) {
  return *std::max_element(f.values.begin(), f.values.end());
}

double field_mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace flockspec
