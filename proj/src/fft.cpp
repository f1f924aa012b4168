#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace tfsharp::detail {

namespace {

class Plan {
 public:
  Plan(int rows, int cols, int sign) : size_(static_cast<std::size_t>(rows) * cols) {
    in_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    if (in_ == nullptr || out_ == nullptr) throw std::bad_alloc();
    const int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    plan_ = rows == 1 ? fftw_plan_dft_1d(cols, in_, out_, dir, FFTW_ESTIMATE)
                      : fftw_plan_dft_2d(rows, cols, in_, out_, dir, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw std::runtime_error("fftw plan creation failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }

  void run(std::span<const cplx> in, std::span<cplx> out) {
    std::copy(in.begin(), in.end(), reinterpret_cast<cplx*>(in_));
    fftw_execute(plan_);
    const cplx* res = reinterpret_cast<const cplx*>(out_);
    std::copy(res, res + size_, out.begin());
  }

 private:
  std::size_t size_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

Plan& cached(int rows, int cols, int sign) {
  thread_local std::map<std::tuple<int, int, int>, std::unique_ptr<Plan>> cache;
  auto key = std::make_tuple(rows, cols, sign < 0 ? -1 : 1);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Plan>(rows, cols, sign)).first;
  }
  return *it->second;
}

}  // namespace

void dft(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("dft: size mismatch");
  if (in.empty()) return;
  cached(1, static_cast<int>(in.size()), sign).run(in, out);
}

void dft2(std::span<const cplx> in, std::span<cplx> out, int rows, int cols, int sign) {
  if (in.size() != out.size() || in.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("dft2: size mismatch");
  }
  cached(rows, cols, sign).run(in, out);
}

void centered_dft(std::span<const cplx> in, std::span<cplx> out, double step, int sign) {
  const std::size_t n = in.size();
  if (n % 2 != 0) throw std::invalid_argument("centered_dft: length must be even");
  std::vector<cplx> buf(in.begin(), in.end());
  for (std::size_t j = 1; j < n; j += 2) buf[j] = -buf[j];
  dft(buf, out, sign);
  // (-1)^(k + n/2)
  const bool flip_even = (n / 2) % 2 == 1;
  for (std::size_t k = 0; k < n; ++k) {
    const bool negate = (k % 2 == 1) != flip_even;
    out[k] *= negate ? -step : step;
  }
}

}  // namespace tfsharp::detail
