#include "tfsharp/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "phase.hpp"
#include "tfsharp/families.hpp"

namespace tfsharp {

namespace {

bool near_integer(double v) { return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v)); }

}  // namespace

Grid1D::Grid1D(int L, int m) : L_(L), m_(m) {
  if (L <= 0 || m <= 0) throw std::invalid_argument("grid sizes must be positive");
  if ((static_cast<long long>(L) * m) % 2 != 0) {
    throw std::invalid_argument("grid point count L*m must be even");
  }
}

int Grid1D::index_of(double t) const {
  const long long n = N();
  long long j = std::llround((t + 0.5 * L_) * m_);
  j %= n;
  if (j < 0) j += n;
  return static_cast<int>(j);
}

bool Grid1D::is_aligned(double t) const { return near_integer(t * m_); }

bool Grid1D::is_frequency_aligned(double omega) const { return near_integer(omega * L_); }

Grid1D make_grid(int L, int m) {
  if (L <= 0 || m <= 0) {
    throw std::invalid_argument("make_grid: L and m must be positive (L=" + std::to_string(L) +
                                ", m=" + std::to_string(m) + ")");
  }
  if (L % 2 != 0) {
    throw std::invalid_argument("make_grid: L must be even (L=" + std::to_string(L) + ")");
  }
  return Grid1D(L, m);
}

SampledSignal::SampledSignal(Grid1D g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
  if (samples.size() != static_cast<std::size_t>(grid.N())) {
    throw std::invalid_argument("signal length " + std::to_string(samples.size()) +
                                " does not match grid size " + std::to_string(grid.N()));
  }
}

SampledSymbol::SampledSymbol(Grid1D g, int stride) : x_grid(g), x_stride(stride) {
  if (stride <= 0 || g.N() % stride != 0) {
    throw std::invalid_argument("symbol x-stride must divide N");
  }
  samples.assign(static_cast<std::size_t>(rows()) * cols(), cplx{});
}

SampledSymbol::SampledSymbol(Grid1D g, int stride, std::vector<cplx> s)
    : x_grid(g), x_stride(stride), samples(std::move(s)) {
  if (stride <= 0 || g.N() % stride != 0) {
    throw std::invalid_argument("symbol x-stride must divide N");
  }
  if (samples.size() != static_cast<std::size_t>(rows()) * cols()) {
    throw std::invalid_argument("symbol sample count does not match its shape");
  }
}

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch (" + std::to_string(a.L()) +
                                "x" + std::to_string(a.m()) + " vs " + std::to_string(b.L()) +
                                "x" + std::to_string(b.m()) + ")");
  }
}

SampledSignal sample(const WindowSpec& w, const Grid1D& grid, double tail_epsilon) {
  const int n = grid.N();
  std::vector<cplx> s(n);
  for (int j = 0; j < n; ++j) s[j] = w(grid.point(j));
  SampledSignal out(grid, std::move(s));

  double total = 0.0;
  double tail = 0.0;
  const int m = grid.m();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(out.samples[j]);
    total += a;
    if (j < m || j >= n - m) tail += a;
  }
  out.tail_mass = total > 0.0 ? tail / total : 0.0;
  out.truncation_warning = out.tail_mass > tail_epsilon;
  if (w.kind() == WindowKind::Chirp) {
    out.alias_warning = w.chirp_rate() > max_alias_free_lambda(grid, w.support_radius());
  }
  return out;
}

SampledSignal translate(const SampledSignal& f, double x) {
  const Grid1D& g = f.grid;
  if (!g.is_aligned(x)) {
    throw std::invalid_argument("translate: shift " + std::to_string(x) + " is not on the grid");
  }
  const long long n = g.N();
  long long shift = std::llround(x * g.m()) % n;
  if (shift < 0) shift += n;
  std::vector<cplx> out(n);
  for (long long j = 0; j < n; ++j) {
    long long src = j - shift;
    if (src < 0) src += n;
    out[j] = f.samples[src];
  }
  return SampledSignal(g, std::move(out));
}

SampledSignal modulate(const SampledSignal& f, double omega) {
  const Grid1D& g = f.grid;
  if (!g.is_frequency_aligned(omega)) {
    throw std::invalid_argument("modulate: frequency " + std::to_string(omega) +
                                " is not on the frequency lattice");
  }
  // omega * t_j = a (j - N/2) / N with a = omega * L.
  const long long a = std::llround(omega * g.L());
  const long long n = g.N();
  std::vector<cplx> out(n);
  for (long long j = 0; j < n; ++j) {
    out[j] = detail::unit_phase(a * (j - n / 2), n) * f.samples[j];
  }
  return SampledSignal(g, std::move(out));
}

cplx inner_product(const SampledSignal& f, const SampledSignal& g) {
  require_same_grid(f.grid, g.grid, "inner_product");
  cplx acc{};
  for (std::size_t j = 0; j < f.samples.size(); ++j) acc += f.samples[j] * std::conj(g.samples[j]);
  return acc * f.grid.step();
}

}  // namespace tfsharp
