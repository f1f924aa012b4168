#include "tfsharp/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fft.hpp"

namespace tfsharp {

SampledSignal fourier(const SampledSignal& f) {
  SampledSignal out(f.grid.dual());
  detail::centered_dft(f.samples, out.samples, f.grid.step(), -1);
  return out;
}

SampledSignal inverse_fourier(const SampledSignal& u) {
  SampledSignal out(u.grid.dual());
  detail::centered_dft(u.samples, out.samples, u.grid.step(), +1);
  return out;
}

StftPlan::StftPlan(Grid1D g, int stride) : grid(g), x_stride(stride) {
  if (stride <= 0 || g.m() % stride != 0) {
    throw std::invalid_argument("StftPlan: x-stride " + std::to_string(stride) +
                                " must divide m = " + std::to_string(g.m()));
  }
}

SampledSymbol stft(const SampledSignal& f, const SampledSignal& g, const StftPlan& plan) {
  require_same_grid(f.grid, g.grid, "stft");
  require_same_grid(f.grid, plan.grid, "stft plan");
  const int n = f.grid.N();
  const int s = plan.x_stride;
  SampledSymbol out(plan.grid, s);
  std::vector<cplx> prod(n);
  for (int r = 0; r < out.rows(); ++r) {
    const int shift = r * s;
    // g(t - x_r): x_r = t_shift - t_0 relative to the centred origin, i.e.
    // t_j - x_r = t_{j - shift + N/2}.
    for (int j = 0; j < n; ++j) {
      int src = j - shift + n / 2;
      src %= n;
      if (src < 0) src += n;
      prod[j] = f.samples[j] * std::conj(g.samples[src]);
    }
    detail::centered_dft(prod, out.row(r), f.grid.step(), -1);
  }
  return out;
}

SampledSymbol stft(const SampledSignal& f, const SampledSignal& g) {
  return stft(f, g, StftPlan(f.grid));
}

SampledSignal synthesis(const SampledSymbol& F, const SampledSignal& g) {
  require_same_grid(F.x_grid, g.grid, "synthesis");
  const int n = g.grid.N();
  const int s = F.x_stride;
  const double weight = g.grid.step() * s;
  const double dual_step = g.grid.dual().step();
  std::vector<cplx> acc(n);
  std::vector<cplx> u(n);
  for (int r = 0; r < F.rows(); ++r) {
    detail::centered_dft(F.row(r), u, dual_step, +1);
    const int shift = r * s;
    for (int j = 0; j < n; ++j) {
      int src = j - shift + n / 2;
      src %= n;
      if (src < 0) src += n;
      acc[j] += g.samples[src] * u[j] * weight;
    }
  }
  return SampledSignal(g.grid, std::move(acc));
}

cplx gaussian_stft_oracle(double lambda, double x, double omega) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gaussian_stft_oracle: lambda must be positive");
  const double pi = std::numbers::pi;
  const double mag = std::exp(-pi * (lambda * x * x + omega * omega) / (lambda + 1.0)) /
                     std::sqrt(lambda + 1.0);
  const double arg = -2.0 * pi * x * omega / (lambda + 1.0);
  return std::polar(mag, arg);
}

SampledSymbol phase_space_convolution(const SampledSymbol& A, const SampledSymbol& B) {
  require_same_grid(A.x_grid, B.x_grid, "phase_space_convolution");
  if (A.x_stride != B.x_stride) throw std::invalid_argument("phase_space_convolution: stride mismatch");
  const int rows = A.rows();
  const int cols = A.cols();
  if (rows % 2 != 0) throw std::invalid_argument("phase_space_convolution: odd row count");
  const std::size_t total = static_cast<std::size_t>(rows) * cols;

  // Centre B so that index 0 holds the origin of phase space.
  std::vector<cplx> shifted(total);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int rr = (r + rows / 2) % rows;
      const int cc = (c + cols / 2) % cols;
      shifted[static_cast<std::size_t>(r) * cols + c] = B.at(rr, cc);
    }
  }
  std::vector<cplx> fa(total), fb(total), prod(total);
  detail::dft2(A.samples, fa, rows, cols, -1);
  detail::dft2(shifted, fb, rows, cols, -1);
  for (std::size_t i = 0; i < total; ++i) prod[i] = fa[i] * fb[i];
  SampledSymbol out(A.x_grid, A.x_stride);
  detail::dft2(prod, out.samples, rows, cols, +1);
  const double scale = A.cell_area() / static_cast<double>(total);
  for (auto& v : out.samples) v *= scale;
  return out;
}

double window_domination_check(const SampledSignal& f, const SampledSignal& g,
                               const SampledSignal& g0, const SampledSignal& gamma) {
  const cplx pairing = inner_product(gamma, g);
  if (std::abs(pairing) <= 1e-8) {
    throw std::invalid_argument("window_domination_check: <gamma, g> is numerically zero");
  }
  const SampledSymbol lhs = stft(f, g0);
  SampledSymbol a = stft(f, g);
  SampledSymbol b = stft(gamma, g0);
  for (auto& v : a.samples) v = std::abs(v);
  for (auto& v : b.samples) v = std::abs(v);
  const SampledSymbol conv = phase_space_convolution(a, b);
  const double inv = 1.0 / std::abs(pairing);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lhs.samples.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.samples[i]) - inv * conv.samples[i].real());
  }
  return worst;
}

}  // namespace tfsharp
