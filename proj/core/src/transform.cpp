#include "flockspec/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace flockspec {

namespace {

// FFTW planner is not thread-safe; plans are created under a global lock and
// cached per (dim, N). FFTW_ESTIMATE keeps plan selection deterministic run to
// run, which the byte-identical-records requirement relies on.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t size = 0;

  ~PlanPair() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

std::mutex plan_mutex;
std::map<std::pair<int, int>, std::shared_ptr<PlanPair>> plan_cache;

std::shared_ptr<PlanPair> get_plan(const TorusGrid& g) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(g.dim, g.n);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;

  auto p = std::make_shared<PlanPair>();
  p->size = g.size;
  p->buf = fftw_alloc_complex(g.size);
  if (g.dim == 1) {
    p->fwd = fftw_plan_dft_1d(g.n, p->buf, p->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p->bwd = fftw_plan_dft_1d(g.n, p->buf, p->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    p->fwd = fftw_plan_dft_2d(g.n, g.n, p->buf, p->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p->bwd = fftw_plan_dft_2d(g.n, g.n, p->buf, p->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  plan_cache[key] = p;
  return p;
}

// The shared plan buffer is also the execution buffer; serialize executions.
std::mutex exec_mutex;

}  // namespace

SpectralField forward_transform(const ScalarField& f) {
  SpectralField F(f.grid);
  auto plan = get_plan(f.grid);
  std::lock_guard<std::mutex> lock(exec_mutex);
  for (std::size_t i = 0; i < f.grid.size; ++i) {
    plan->buf[i][0] = f.values[i];
    plan->buf[i][1] = 0.0;
  }
  fftw_execute(plan->fwd);
  const double scale = 1.0 / static_cast<double>(f.grid.size);
  for (std::size_t i = 0; i < f.grid.size; ++i)
    F.coeff[i] = {plan->buf[i][0] * scale, plan->buf[i][1] * scale};
  return F;
}

ScalarField inverse_transform(const SpectralField& F) {
  ScalarField f(F.grid);
  auto plan = get_plan(F.grid);
  std::lock_guard<std::mutex> lock(exec_mutex);
  for (std::size_t i = 0; i < F.grid.size; ++i) {
    plan->buf[i][0] = F.coeff[i].real();
    plan->buf[i][1] = F.coeff[i].imag();
  }
  fftw_execute(plan->bwd);
  for (std::size_t i = 0; i < F.grid.size; ++i) f.values[i] = plan->buf[i][0];
  return f;
}

double spectral_energy(const SpectralField& F) {
  double s = 0.0;
  for (const auto& c : F.coeff) s += std::norm(c);
  return s;
}

}  // namespace flockspec
