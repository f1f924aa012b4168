#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tfsharp {

using cplx = std::complex<double>;

class WindowSpec;

/// Uniform periodic grid on [-L/2, L/2) with m samples per unit cube.
///
/// Points t_j = -L/2 + j/m, j = 0..N-1, N = L*m. The frequency lattice is
/// omega_k = (k - N/2)/L, which is itself the point set of the dual grid
/// Grid1D(m, L). Unit cubes [n, n+1) are blocks of m consecutive points
/// whenever L is even.
class Grid1D {
 public:
  /// Unvalidated; use make_grid() for user input. Dual grids may have odd L.
  Grid1D(int L, int m);

  int L() const { return L_; }
  int m() const { return m_; }
  int N() const { return L_ * m_; }
  double step() const { return 1.0 / m_; }
  double freq_step() const { return 1.0 / L_; }

  double point(int j) const { return -0.5 * L_ + static_cast<double>(j) / m_; }
  double frequency(int k) const { return static_cast<double>(k - N() / 2) / L_; }

  /// Index of the point nearest t (mod the period); exact for grid-aligned t.
  int index_of(double t) const;
  bool is_aligned(double t) const;
  bool is_frequency_aligned(double omega) const;

  /// The frequency lattice viewed as a signal grid (extent m, step 1/L).
  Grid1D dual() const { return Grid1D(m_, L_); }

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.L_ == b.L_ && a.m_ == b.m_;
  }

 private:
  int L_;
  int m_;
};

/// Validated constructor: L positive and even, m positive.
Grid1D make_grid(int L, int m);

/// Default tail tolerance for sampling analytic test functions.
inline constexpr double kDefaultTailEpsilon = 1e-12;

struct SampledSignal {
  Grid1D grid;
  std::vector<cplx> samples;
  /// Relative L1 mass in the outermost cube on each side.
  double tail_mass = 0.0;
  bool truncation_warning = false;
  bool alias_warning = false;

  SampledSignal(Grid1D g, std::vector<cplx> s);
  explicit SampledSignal(Grid1D g) : SampledSignal(g, std::vector<cplx>(g.N())) {}

  std::size_t size() const { return samples.size(); }
  cplx& operator[](std::size_t j) { return samples[j]; }
  const cplx& operator[](std::size_t j) const { return samples[j]; }
};

/// Samples on the phase-space grid (x_j, omega_k).
///
/// Rows are x positions t_{j*x_stride} of the signal grid, columns are the N
/// points of the frequency lattice. Row-major storage.
struct SampledSymbol {
  Grid1D x_grid;
  int x_stride = 1;
  std::vector<cplx> samples;

  SampledSymbol(Grid1D g, int stride);
  SampledSymbol(Grid1D g, int stride, std::vector<cplx> s);

  int rows() const { return x_grid.N() / x_stride; }
  int cols() const { return x_grid.N(); }
  double x_at(int row) const { return x_grid.point(row * x_stride); }
  double omega_at(int col) const { return x_grid.frequency(col); }
  /// Phase-space quadrature weight (h * stride) / L.
  double cell_area() const { return x_grid.step() * x_stride / x_grid.L(); }

  cplx& at(int row, int col) { return samples[static_cast<std::size_t>(row) * cols() + col]; }
  const cplx& at(int row, int col) const {
    return samples[static_cast<std::size_t>(row) * cols() + col];
  }
  std::span<cplx> row(int r) {
    return {samples.data() + static_cast<std::size_t>(r) * cols(), static_cast<std::size_t>(cols())};
  }
  std::span<const cplx> row(int r) const {
    return {samples.data() + static_cast<std::size_t>(r) * cols(), static_cast<std::size_t>(cols())};
  }
};

/// Evaluates w at every grid point, computes tail_mass and raises the
/// truncation / aliasing warning flags.
SampledSignal sample(const WindowSpec& w, const Grid1D& grid,
                     double tail_epsilon = kDefaultTailEpsilon);

/// T_x f(t) = f(t - x) by circular shift; x must be a multiple of the step.
SampledSignal translate(const SampledSignal& f, double x);
/// M_omega f(t) = exp(2 pi i omega t) f(t); omega must be a multiple of 1/L.
SampledSignal modulate(const SampledSignal& f, double omega);

/// h * sum_j f_j conj(g_j), summed in index order.
cplx inner_product(const SampledSignal& f, const SampledSignal& g);

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what);

}  // namespace tfsharp
