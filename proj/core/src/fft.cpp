#include "vws/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace vws::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  const PlanPair& get(int dim, int points) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(dim, points);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    int dims[2] = {points, points};
    std::size_t n = dim == 1 ? points : std::size_t(points) * points;
    std::vector<cplx> a(n), b(n);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft(dim, dims, in, out, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft(dim, dims, in, out, FFTW_BACKWARD, flags);
    return plans_.emplace(key, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
  // Out-of-place complex transforms leave the input untouched.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  if (in.data() == out.data()) {
    std::vector<cplx> copy(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(copy.data()), dst);
    return;
  }
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(const GridSpec& g, std::span<const cplx> in, std::span<cplx> out) {
  run(cache().get(g.dim, g.points).forward, in, out);
}

void backward(const GridSpec& g, std::span<const cplx> in, std::span<cplx> out) {
  run(cache().get(g.dim, g.points).backward, in, out);
}

}  // namespace vws::fft
