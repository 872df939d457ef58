#include "flockspec/grid.hpp"

#include <string>

namespace flockspec {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

TorusGrid make_grid(int dim, int n) {
  if (dim != 1 && dim != 2)
    throw ValidationError("grid dim must be 1 or 2, got " + std::to_string(dim));
  if (!power_of_two(n) || n < 8)
    throw ValidationError("grid N must be a power of two >= 8, got " + std::to_string(n));
  TorusGrid g;
  g.dim = dim;
  g.n = n;
  g.h = kTwoPi / n;
  g.size = 1;
  for (int d = 0; d < dim; ++d) g.size *= static_cast<std::size_t>(n);
  return g;
}

}  // namespace flockspec
