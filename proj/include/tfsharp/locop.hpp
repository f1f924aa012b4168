#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfsharp/exponent.hpp"
#include "tfsharp/grid.hpp"

namespace tfsharp {

/// Integral kernel K(x_i, y_l) on a signal grid, row-major (rows x, columns y).
/// Acts by (D_K f)(x_i) = h sum_l K(x_i, y_l) f(y_l).
struct KernelMatrix {
  Grid1D grid;
  std::vector<cplx> entries;
  std::string provenance;

  explicit KernelMatrix(Grid1D g, std::string prov = {});

  int size() const { return grid.N(); }
  cplx& at(int i, int l) { return entries[static_cast<std::size_t>(i) * size() + l]; }
  const cplx& at(int i, int l) const { return entries[static_cast<std::size_t>(i) * size() + l]; }
};

/// A f = synthesis(a * stft(f, phi1), phi2), using the x-stride of a.
SampledSignal apply_locop(const SampledSymbol& a, const SampledSignal& phi1,
                          const SampledSignal& phi2, const SampledSignal& f);

/// Phase-space quadrature of a V_{phi1} f conj(V_{phi2} g).
cplx weak_pairing(const SampledSymbol& a, const SampledSignal& phi1, const SampledSignal& phi2,
                  const SampledSignal& f, const SampledSignal& g);

/// Kernel of A_a^{phi1,phi2} through the partial Fourier transform of a in
/// omega: O(N^3) for a full-resolution symbol.
KernelMatrix build_kernel(const SampledSymbol& a, const SampledSignal& phi1,
                          const SampledSignal& phi2);
/// Reference double sum over phase space, O(N^4). Meant for N <= 64.
KernelMatrix build_kernel_direct(const SampledSymbol& a, const SampledSignal& phi1,
                                 const SampledSignal& phi2);

SampledSignal apply_kernel(const KernelMatrix& K, const SampledSignal& f);

struct SchurReport {
  double c_sup_y = 0.0;     // sup_y int |K(x, y)| dx
  double c_sup_x = 0.0;     // sup_x int |K(x, y)| dy
  double amalgam_a = 0.0;   // ||K||_{W(L^{1,inf}, L^inf L^1)}
  double amalgam_b = 0.0;   // ||K||_{W(L^inf L^1, L^{1,inf})}
};

SchurReport schur_report(const KernelMatrix& K);

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

struct OpNormEstimate {
  double value = 0.0;
  int iterations = 0;
};

/// Largest singular value of h K by power iteration on (hK)^* (hK), started
/// from the normalised all-ones vector. Throws NonConvergence after max_iter.
OpNormEstimate opnorm_l2(const KernelMatrix& K, double tol = 1e-8, int max_iter = 20000);

struct LrBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t best_probe = 0;
};

/// lower = max over probes of ||D_K f||_r / ||f||_r;
/// upper = c_sup_y^(1/r) * c_sup_x^(1/r').
LrBounds opnorm_lr_bounds(const KernelMatrix& K, const ExtendedExponent& r,
                          const std::vector<SampledSignal>& probes);
LrBounds opnorm_lr_bounds(const KernelMatrix& K, const SchurReport& schur,
                          const ExtendedExponent& r, const std::vector<SampledSignal>& probes);

/// The extremal signal, its translates by +-1 and modulations by +-1, then
/// `random_count` seeded random band-limited signals.
std::vector<SampledSignal> default_probe_set(const SampledSignal& extremal, std::uint64_t seed,
                                             int random_count = 32);

}  // namespace tfsharp
