#include "pwdirac/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace pwdirac {

namespace {

std::mutex planner_mutex;

fftw_plan cached_plan_1d(int n, bool inverse) {
  static std::map<std::pair<int, bool>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto it = cache.find({n, inverse});
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache[{n, inverse}] = p;
  return p;
}

fftw_plan cached_plan_3d(int n, bool inverse) {
  static std::map<std::pair<int, bool>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto it = cache.find({n, inverse});
  if (it != cache.end()) return it->second;
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  fftw_complex* buf = fftw_alloc_complex(total);
  fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache[{n, inverse}] = p;
  return p;
}

}  // namespace

void fft_1d(std::complex<double>* data, int n, bool inverse) {
  fftw_plan p = cached_plan_1d(n, inverse);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

void fft_3d(std::complex<double>* data, int n, bool inverse) {
  fftw_plan p = cached_plan_3d(n, inverse);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

}  // namespace pwdirac
