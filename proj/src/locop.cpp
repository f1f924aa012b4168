#include "tfsharp/locop.hpp"

#include <algorithm>
#include <cmath>

#include "phase.hpp"
#include "tfsharp/families.hpp"
#include "tfsharp/norms.hpp"
#include "tfsharp/transforms.hpp"

namespace tfsharp {

namespace {

int wrap(long long v, int n) {
  long long r = v % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

void check_symbol(const SampledSymbol& a, const SampledSignal& phi1, const SampledSignal& phi2) {
  require_same_grid(a.x_grid, phi1.grid, "localization operator (phi1)");
  require_same_grid(a.x_grid, phi2.grid, "localization operator (phi2)");
}

}  // namespace

KernelMatrix::KernelMatrix(Grid1D g, std::string prov)
    : grid(g), entries(static_cast<std::size_t>(g.N()) * g.N()), provenance(std::move(prov)) {}

SampledSignal apply_locop(const SampledSymbol& a, const SampledSignal& phi1,
                          const SampledSignal& phi2, const SampledSignal& f) {
  check_symbol(a, phi1, phi2);
  SampledSymbol v = stft(f, phi1, StftPlan(f.grid, a.x_stride));
  for (std::size_t i = 0; i < v.samples.size(); ++i) v.samples[i] *= a.samples[i];
  return synthesis(v, phi2);
}

cplx weak_pairing(const SampledSymbol& a, const SampledSignal& phi1, const SampledSignal& phi2,
                  const SampledSignal& f, const SampledSignal& g) {
  check_symbol(a, phi1, phi2);
  const StftPlan plan(f.grid, a.x_stride);
  const SampledSymbol vf = stft(f, phi1, plan);
  const SampledSymbol vg = stft(g, phi2, plan);
  cplx acc{};
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    acc += a.samples[i] * vf.samples[i] * std::conj(vg.samples[i]);
  }
  return acc * a.cell_area();
}

KernelMatrix build_kernel(const SampledSymbol& a, const SampledSignal& phi1,
                          const SampledSignal& phi2) {
  check_symbol(a, phi1, phi2);
  const Grid1D& grid = a.x_grid;
  const int n = grid.N();
  const int s = a.x_stride;
  const Grid1D freq = grid.dual();
  KernelMatrix K(grid, "kernel");
  const double weight = grid.step() * s;
  std::vector<cplx> w2(n), w1(n);
  for (int r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    // b(d h) = (1/L) sum_k a(t_r, omega_k) exp(2 pi i omega_k d h)
    const SampledSignal b = inverse_fourier(SampledSignal(freq, std::vector<cplx>(row.begin(), row.end())));
    const int shift = r * s;
    for (int i = 0; i < n; ++i) {
      w2[i] = phi2.samples[wrap(static_cast<long long>(i) - shift + n / 2, n)] * weight;
      w1[i] = std::conj(phi1.samples[wrap(static_cast<long long>(i) - shift + n / 2, n)]);
    }
    for (int i = 0; i < n; ++i) {
      if (w2[i] == cplx{}) continue;
      cplx* out = &K.at(i, 0);
      for (int l = 0; l < n; ++l) {
        if (w1[l] == cplx{}) continue;
        out[l] += w2[i] * w1[l] * b.samples[wrap(static_cast<long long>(i) - l + n / 2, n)];
      }
    }
  }
  return K;
}

KernelMatrix build_kernel_direct(const SampledSymbol& a, const SampledSignal& phi1,
                                 const SampledSignal& phi2) {
  check_symbol(a, phi1, phi2);
  const Grid1D& grid = a.x_grid;
  const int n = grid.N();
  const int s = a.x_stride;
  KernelMatrix K(grid, "kernel-direct");
  const double cell = a.cell_area();
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      cplx acc{};
      for (int r = 0; r < a.rows(); ++r) {
        const int shift = r * s;
        const cplx win = phi2.samples[wrap(static_cast<long long>(i) - shift + n / 2, n)] *
                         std::conj(phi1.samples[wrap(static_cast<long long>(l) - shift + n / 2, n)]);
        for (int k = 0; k < n; ++k) {
          // omega_k (x_i - y_l) = (k - N/2)(i - l) / N
          const cplx phase = detail::unit_phase(static_cast<long long>(k - n / 2) * (i - l), n);
          acc += a.at(r, k) * phase * win;
        }
      }
      K.at(i, l) = acc * cell;
    }
  }
  return K;
}

SampledSignal apply_kernel(const KernelMatrix& K, const SampledSignal& f) {
  require_same_grid(K.grid, f.grid, "apply_kernel");
  const int n = K.size();
  const double h = K.grid.step();
  SampledSignal out(K.grid);
  for (int i = 0; i < n; ++i) {
    cplx acc{};
    const cplx* row = &K.at(i, 0);
    for (int l = 0; l < n; ++l) acc += row[l] * f.samples[l];
    out.samples[i] = acc * h;
  }
  return out;
}

SchurReport schur_report(const KernelMatrix& K) {
  const int n = K.size();
  const int m = K.grid.m();
  const int cubes = K.grid.L();
  const double h = K.grid.step();
  SchurReport rep;

  std::vector<double> col_sum(n, 0.0);
  // row_cube[i][c] = h sum_{y in cube c} |K(x_i, y)|, col_cube[c][l] likewise over x.
  std::vector<double> row_cube(static_cast<std::size_t>(n) * cubes, 0.0);
  std::vector<double> col_cube(static_cast<std::size_t>(cubes) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int l = 0; l < n; ++l) {
      const double v = std::abs(K.at(i, l));
      row_sum += v;
      col_sum[l] += v;
      row_cube[static_cast<std::size_t>(i) * cubes + l / m] += v;
      col_cube[static_cast<std::size_t>(i / m) * n + l] += v;
    }
    rep.c_sup_x = std::max(rep.c_sup_x, h * row_sum);
  }
  for (int l = 0; l < n; ++l) rep.c_sup_y = std::max(rep.c_sup_y, h * col_sum[l]);

  // amalgam_a: sup over x-cubes k of sum over y-cubes c of sup_{y in c} int_{x in k} |K|.
  for (int k = 0; k < cubes; ++k) {
    double total = 0.0;
    for (int c = 0; c < cubes; ++c) {
      double sup = 0.0;
      for (int l = c * m; l < (c + 1) * m; ++l) {
        sup = std::max(sup, h * col_cube[static_cast<std::size_t>(k) * n + l]);
      }
      total += sup;
    }
    rep.amalgam_a = std::max(rep.amalgam_a, total);
  }
  // amalgam_b: sup over y-cubes c of sum over x-cubes k of sup_{x in k} int_{y in c} |K|.
  for (int c = 0; c < cubes; ++c) {
    double total = 0.0;
    for (int k = 0; k < cubes; ++k) {
      double sup = 0.0;
      for (int i = k * m; i < (k + 1) * m; ++i) {
        sup = std::max(sup, h * row_cube[static_cast<std::size_t>(i) * cubes + c]);
      }
      total += sup;
    }
    rep.amalgam_b = std::max(rep.amalgam_b, total);
  }
  return rep;
}

OpNormEstimate opnorm_l2(const KernelMatrix& K, double tol, int max_iter) {
  const int n = K.size();
  const double h = K.grid.step();
  std::vector<cplx> v(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  std::vector<cplx> av(n), w(n);
  double prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      cplx acc{};
      const cplx* row = &K.at(i, 0);
      for (int l = 0; l < n; ++l) acc += row[l] * v[l];
      av[i] = acc * h;
    }
    double norm_av = 0.0;
    for (const cplx& z : av) norm_av += std::norm(z);
    norm_av = std::sqrt(norm_av);
    if (norm_av == 0.0) return {0.0, it};
    std::fill(w.begin(), w.end(), cplx{});
    for (int i = 0; i < n; ++i) {
      const cplx* row = &K.at(i, 0);
      const cplx c = av[i] * h;
      for (int l = 0; l < n; ++l) w[l] += std::conj(row[l]) * c;
    }
    double norm_w = 0.0;
    for (const cplx& z : w) norm_w += std::norm(z);
    norm_w = std::sqrt(norm_w);
    if (std::abs(norm_av - prev) <= tol * norm_av) return {norm_av, it};
    prev = norm_av;
    for (int l = 0; l < n; ++l) v[l] = w[l] / norm_w;
  }
  throw NonConvergence("opnorm_l2: no convergence after " + std::to_string(max_iter) + " iterations",
                       max_iter);
}

LrBounds opnorm_lr_bounds(const KernelMatrix& K, const SchurReport& schur,
                          const ExtendedExponent& r, const std::vector<SampledSignal>& probes) {
  if (probes.empty()) throw std::invalid_argument("opnorm_lr_bounds: empty probe list");
  LrBounds out;
  out.lower = -1.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double denom = lp_norm(probes[i], r);
    if (!(denom > 0.0)) throw std::invalid_argument("opnorm_lr_bounds: zero probe");
    const double ratio = lp_norm(apply_kernel(K, probes[i]), r) / denom;
    if (ratio > out.lower) {
      out.lower = ratio;
      out.best_probe = i;
    }
  }
  auto power = [](double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); };
  out.upper = power(schur.c_sup_y, r.reciprocal()) * power(schur.c_sup_x, r.conjugate_reciprocal());
  return out;
}

LrBounds opnorm_lr_bounds(const KernelMatrix& K, const ExtendedExponent& r,
                          const std::vector<SampledSignal>& probes) {
  return opnorm_lr_bounds(K, schur_report(K), r, probes);
}

std::vector<SampledSignal> default_probe_set(const SampledSignal& extremal, std::uint64_t seed,
                                             int random_count) {
  std::vector<SampledSignal> out = {extremal};
  for (double s : {-1.0, 1.0}) out.push_back(translate(extremal, s));
  for (double w : {-1.0, 1.0}) out.push_back(modulate(extremal, w));
  SeededRng rng(seed);
  for (int i = 0; i < random_count; ++i) out.push_back(random_bandlimited(extremal.grid, rng));
  return out;
}

}  // namespace tfsharp
