#include "zakharov/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace zakharov::fft {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign, bool in_place) {
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(n, sign, in_place);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    std::vector<std::complex<double>> a(total), b(in_place ? 0 : total);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = in_place ? pa : reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan plan = fftw_plan_dft_3d(n, n, n, pa, pb, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, plan);
    return plan;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mutex);
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    plans.clear();
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(int n, int sign, const std::complex<double>* in, std::complex<double>* out) {
  const bool in_place = in == out;
  fftw_plan plan = cache().get(n, sign, in_place);
  auto* pi = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in));
  fftw_execute_dft(plan, pi, reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(int n, const std::complex<double>* in, std::complex<double>* out) {
  run(n, FFTW_FORWARD, in, out);
}

void backward(int n, const std::complex<double>* in, std::complex<double>* out) {
  run(n, FFTW_BACKWARD, in, out);
}

void clear_plan_cache() { cache().clear(); }

}  // namespace zakharov::fft
