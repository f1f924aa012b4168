#pragma once

#include "tfsharp/grid.hpp"

namespace tfsharp {

/// f^(omega_k) = h sum_j f(t_j) exp(-2 pi i omega_k t_j), returned on grid.dual().
SampledSignal fourier(const SampledSignal& f);

/// (F^-1 u)(s_k) = h sum_j u(t_j) exp(+2 pi i s_k t_j), returned on grid.dual().
/// inverse_fourier(fourier(f)) == f up to round-off.
SampledSignal inverse_fourier(const SampledSignal& u);

/// Phase-space layout of an STFT. The stride thins the x axis; it must
/// divide m so every unit x-cube holds whole columns.
struct StftPlan {
  Grid1D grid;
  int x_stride = 1;

  explicit StftPlan(Grid1D g, int stride = 1);
  int rows() const { return grid.N() / x_stride; }
};

/// V_g f(x_j, omega_k) = h sum_t f(t) conj(g(t - x_j)) exp(-2 pi i omega_k t),
/// with circular windowing.
SampledSymbol stft(const SampledSignal& f, const SampledSignal& g, const StftPlan& plan);
SampledSymbol stft(const SampledSignal& f, const SampledSignal& g);

/// Phase-space synthesis sum_{j,k} F(x_j, omega_k) M_{omega_k} T_{x_j} g * cell_area.
/// Adjoint of stft(., g) for the phase-space inner product.
SampledSignal synthesis(const SampledSymbol& F, const SampledSignal& g);

/// Closed-form V_phi phi_lambda(x, omega) for phi = exp(-pi t^2), d = 1.
cplx gaussian_stft_oracle(double lambda, double x, double omega);

/// Pointwise max of |V_{g0} f| - (|V_g f| * |V_{g0} gamma|) / |<gamma, g>| over
/// the phase-space lattice (circular convolution, cell weight h/L).
/// Non-positive up to round-off. Throws if |<gamma, g>| <= 1e-8.
double window_domination_check(const SampledSignal& f, const SampledSignal& g,
                               const SampledSignal& g0, const SampledSignal& gamma);

/// Circular 2-D convolution on the phase-space lattice, weighted by cell_area.
SampledSymbol phase_space_convolution(const SampledSymbol& A, const SampledSymbol& B);

}  // namespace tfsharp
