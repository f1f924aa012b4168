#include "tfsharp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fft.hpp"
#include "phase.hpp"
#include "tfsharp/experiments.hpp"
#include "tfsharp/families.hpp"
#include "tfsharp/locop.hpp"
#include "tfsharp/norms.hpp"
#include "tfsharp/transforms.hpp"

namespace tfsharp {

Assertion Assertion::equal(std::string name, double measured, double expected, double tolerance) {
  Assertion a{std::move(name), Kind::Equal, measured, expected, tolerance, false};
  a.passed = std::abs(measured - expected) <= tolerance;
  return a;
}

Assertion Assertion::at_most(std::string name, double measured, double bound, double tolerance) {
  Assertion a{std::move(name), Kind::AtMost, measured, bound, tolerance, false};
  a.passed = measured <= bound + tolerance;
  return a;
}

namespace {

const ExtendedExponent kOne(1.0);
const ExtendedExponent kTwo(2.0);
const ExtendedExponent kInf = ExtendedExponent::infinity();

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<cplx>& a) {
  double d = 0.0;
  for (const cplx& z : a) d = std::max(d, std::abs(z));
  return d;
}

int wrap(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

SampledSignal unit_gaussian(const Grid1D& grid) {
  SampledSignal phi = sample(gaussian_family(1.0), grid);
  const double n = lp_norm(phi, kTwo);
  for (auto& z : phi.samples) z /= n;
  return phi;
}

SampledSignal scaled(SampledSignal f, cplx c) {
  for (auto& z : f.samples) z *= c;
  return f;
}

void grid_checks(std::vector<Assertion>& out) {
  const Grid1D grid = make_grid(16, 16);
  const SampledSignal phi = sample(gaussian_family(1.0), grid);
  const SampledSignal f = sample(chirp_family(bump(0.5, 1.5), 3.0), grid);
  const double x = 1.25, w = 0.75;
  const SampledSignal lhs = modulate(translate(f, x), w);
  SampledSignal rhs = translate(modulate(f, w), x);
  const cplx c = std::polar(1.0, 2.0 * std::numbers::pi * w * x);
  for (auto& z : rhs.samples) z *= c;
  out.push_back(Assertion::at_most("grid.commutation", max_abs_diff(lhs.samples, rhs.samples), 0.0, 1e-14));
  out.push_back(Assertion::equal("grid.shift_unitarity", lp_norm(lhs, kTwo), lp_norm(f, kTwo),
                                 1e-14 * lp_norm(f, kTwo)));
  out.push_back(Assertion::equal("grid.gaussian_self_product", inner_product(phi, phi).real(),
                                 std::sqrt(0.5), 1e-10));
}

void transform_checks(std::vector<Assertion>& out, SeededRng& rng) {
  const Grid1D grid = make_grid(16, 16);
  const SampledSignal phi = sample(gaussian_family(1.0), grid);
  const SampledSignal phihat = fourier(phi);
  out.push_back(Assertion::at_most("transforms.gaussian_fixed_point",
                                   max_abs_diff(phihat.samples, phi.samples), 0.0, 1e-10));

  const SampledSignal f = random_bandlimited(grid, rng);
  const SampledSignal g = sample(chirp_family(gaussian_family(1.0), 2.0), grid);
  out.push_back(Assertion::equal("transforms.parseval", lp_norm(fourier(f), kTwo), lp_norm(f, kTwo),
                                 1e-10 * lp_norm(f, kTwo)));
  out.push_back(Assertion::at_most("transforms.inverse",
                                   max_abs_diff(inverse_fourier(fourier(f)).samples, f.samples), 0.0,
                                   1e-12 * max_abs(f.samples)));

  const SampledSymbol v = stft(f, g);
  out.push_back(Assertion::equal("transforms.orthogonality", lp_norm(v, kTwo),
                                 lp_norm(f, kTwo) * lp_norm(g, kTwo),
                                 1e-8 * lp_norm(f, kTwo) * lp_norm(g, kTwo)));

  const int n = grid.N();
  // Covariance under lattice time-frequency shifts.
  {
    const int a = 21, b = -13;
    const SampledSymbol v2 = stft(modulate(translate(f, a * grid.step()), b * grid.freq_step()), g);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        err = std::max(err, std::abs(std::abs(v2.at(j, k)) - std::abs(v.at(wrap(j - a, n), wrap(k - b, n)))));
      }
    }
    out.push_back(Assertion::at_most("transforms.covariance", err, 0.0, 1e-12 * max_abs(v.samples)));
  }
  // Switching f and g.
  {
    const SampledSymbol vs = stft(g, f);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const cplx ph = detail::unit_phase(-static_cast<long long>(j - n / 2) * (k - n / 2), n);
        err = std::max(err, std::abs(vs.at(j, k) - ph * std::conj(v.at(wrap(-j, n), wrap(-k, n)))));
      }
    }
    out.push_back(Assertion::at_most("transforms.switching", err, 0.0, 1e-10 * max_abs(v.samples)));
  }
  // STFT of the Fourier transforms (square grid).
  {
    const SampledSymbol vh = stft(fourier(f), fourier(g));
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        err = std::max(err, std::abs(std::abs(v.at(j, k)) - std::abs(vh.at(k, wrap(-j, n)))));
      }
    }
    out.push_back(Assertion::at_most("transforms.fourier_stft", err, 0.0, 1e-8 * max_abs(v.samples)));
  }
  // Fourier transform of a product of STFTs on a Gaussian quadruple.
  {
    const Grid1D sg = make_grid(8, 8);
    const int ns = sg.N();
    const SampledSignal ff = sample(gaussian_family(2.0), sg);
    const SampledSignal gg = sample(chirped_gaussian(1.0, 0.5), sg);
    const SampledSignal p1 = sample(gaussian_family(0.5), sg);
    const SampledSignal p2 = sample(gaussian_family(1.0), sg);
    const SampledSymbol a1 = stft(ff, p1), a2 = stft(gg, p2);
    const SampledSymbol b1 = stft(ff, gg), b2 = stft(p1, p2);
    std::vector<cplx> prod(static_cast<std::size_t>(ns) * ns);
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a1.samples[i] * std::conj(a2.samples[i]);
    // Transform over x (columns of the row-major array), then over omega.
    std::vector<cplx> col(ns), res(ns), stage(prod.size());
    for (int k = 0; k < ns; ++k) {
      for (int j = 0; j < ns; ++j) col[j] = prod[static_cast<std::size_t>(j) * ns + k];
      detail::centered_dft(col, res, sg.step(), -1);
      for (int j = 0; j < ns; ++j) stage[static_cast<std::size_t>(j) * ns + k] = res[j];
    }
    std::vector<cplx> full(prod.size());
    for (int j = 0; j < ns; ++j) {
      std::span<const cplx> row(stage.data() + static_cast<std::size_t>(j) * ns, ns);
      std::span<cplx> dst(full.data() + static_cast<std::size_t>(j) * ns, ns);
      detail::centered_dft(row, dst, sg.freq_step(), -1);
    }
    // full[xi_j][eta_k] against (V_g f conj(V_{phi2} phi1))(-eta_k, xi_j).
    double err = 0.0, scale = 0.0;
    for (int j = 0; j < ns; ++j) {
      for (int k = 0; k < ns; ++k) {
        const int r = wrap(-k, ns);
        const cplx rhs = b1.at(r, j) * std::conj(b2.at(r, j));
        err = std::max(err, std::abs(full[static_cast<std::size_t>(j) * ns + k] - rhs));
        scale = std::max(scale, std::abs(rhs));
      }
    }
    out.push_back(Assertion::at_most("transforms.product_fourier", err, 0.0, 1e-6 * scale));
  }
  // Closed-form Gaussian STFT.
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const SampledSymbol vg = stft(sample(gaussian_family(lambda), grid), phi);
    double err = 0.0;
    for (int j = 0; j < vg.rows(); ++j) {
      for (int k = 0; k < vg.cols(); ++k) {
        err = std::max(err, std::abs(vg.at(j, k) - gaussian_stft_oracle(lambda, vg.x_at(j), vg.omega_at(k))));
      }
    }
    char name[64];
    std::snprintf(name, sizeof name, "transforms.gaussian_oracle(%g)", lambda);
    out.push_back(Assertion::at_most(name, err, 0.0, 1e-6));
  }
  // Inversion and adjoint relation.
  {
    const SampledSignal rec = synthesis(stft(f, phi), phi);
    const double nphi = inner_product(phi, phi).real();
    out.push_back(Assertion::at_most("transforms.inversion",
                                     max_abs_diff(rec.samples, scaled(f, nphi).samples), 0.0,
                                     1e-6 * nphi * max_abs(f.samples)));
    SampledSymbol F(grid, 1);
    for (auto& z : F.samples) z = cplx(rng.normal(), rng.normal());
    const cplx lhs = inner_product(synthesis(F, g), f);
    const SampledSymbol vf = stft(f, g);
    cplx rhs{};
    for (std::size_t i = 0; i < F.samples.size(); ++i) rhs += F.samples[i] * std::conj(vf.samples[i]);
    rhs *= F.cell_area();
    out.push_back(Assertion::at_most("transforms.adjoint", std::abs(lhs - rhs), 0.0, 1e-8 * std::abs(rhs)));
  }
  // Window domination.
  {
    const Grid1D sg = make_grid(8, 16);
    const SampledSignal p = sample(gaussian_family(1.0), sg);
    out.push_back(Assertion::at_most("transforms.window_domination_gaussian",
                                     window_domination_check(p, p, p, p), 0.0, 1e-6));
    const SampledSignal chirp = sample(chirp_family(bump(), 4.0), sg);
    out.push_back(Assertion::at_most("transforms.window_domination_chirp",
                                     window_domination_check(chirp, p, p, p), 0.0, 1e-5));
  }
}

void norm_checks(std::vector<Assertion>& out, SeededRng& rng) {
  const Grid1D grid = make_grid(16, 16);
  const auto exps = lattice_exponents();
  double eq_err = 0.0, incl = 0.0, holder = 0.0, homog = 0.0;
  for (int t = 0; t < 20; ++t) {
    const SampledSignal f = random_bandlimited(grid, rng);
    const SampledSignal g = random_bandlimited(grid, rng);
    SampledSignal fg = f;
    for (int j = 0; j < grid.N(); ++j) fg.samples[j] *= g.samples[j];
    for (const auto& p : exps) {
      const double lp = lp_norm(f, p);
      eq_err = std::max(eq_err, std::abs(amalgam_norm(f, p, p) - lp) / lp);
      for (const auto& q : exps) {
        const double base = amalgam_norm(f, p, q);
        for (const auto& p2 : exps) {
          for (const auto& q2 : exps) {
            // p >= p2 and q <= q2
            if (p.reciprocal() <= p2.reciprocal() && q.reciprocal() >= q2.reciprocal()) {
              incl = std::max(incl, amalgam_norm(f, p2, q2) / base - 1.0);
            }
          }
        }
        holder = std::max(holder, amalgam_norm(fg, kOne, kOne) /
                                      (base * amalgam_norm(g, p.conjugate(), q.conjugate())) - 1.0);
        const double c = 2.5;
        homog = std::max(homog, std::abs(amalgam_norm(scaled(f, cplx(0.0, -c)), p, q) - c * base) / (c * base));
      }
    }
  }
  out.push_back(Assertion::at_most("norms.amalgam_equals_lp", eq_err, 0.0, 1e-12));
  out.push_back(Assertion::at_most("norms.inclusion", incl, 0.0, 1e-12));
  out.push_back(Assertion::at_most("norms.holder", holder, 0.0, 1e-12));
  out.push_back(Assertion::at_most("norms.homogeneity", homog, 0.0, 1e-13));

  const SampledSignal phi = sample(gaussian_family(1.0), grid);
  const SampledSignal f = random_bandlimited(grid, rng);
  out.push_back(Assertion::equal("norms.modulation_l2", modulation_norm(f, kTwo, kTwo),
                                 lp_norm(phi, kTwo) * lp_norm(f, kTwo), 1e-8 * lp_norm(f, kTwo)));
  out.push_back(Assertion::equal("norms.flp_parseval", flp_norm(f, kTwo), lp_norm(f, kTwo),
                                 1e-10 * lp_norm(f, kTwo)));
  for (const auto& p : {kOne, kTwo, kInf}) {
    out.push_back(Assertion::equal("norms.gaussian_flp(" + p.to_string() + ")", flp_norm(phi, p),
                                   lp_norm(phi, p), 1e-10));
  }
  const SampledSymbol v = stft(phi, phi);
  out.push_back(Assertion::equal("norms.mixed_lpq_orthogonality", mixed_lpq(v, kTwo, kTwo), std::sqrt(0.5), 1e-8));
  double lplq = 0.0;
  for (const auto& p : exps) {
    lplq = std::max(lplq, std::abs(mixed_lplq(v, p, p) - lp_norm(v, p)) / lp_norm(v, p));
  }
  out.push_back(Assertion::at_most("norms.lplp_is_lp", lplq, 0.0, 1e-12));
  const double shifted = modulation_norm(translate(f, 2.0), ExtendedExponent(4.0), kOne);
  const double base = modulation_norm(f, ExtendedExponent(4.0), kOne);
  out.push_back(Assertion::equal("norms.modulation_translation", shifted, base, 1e-8 * base));
}

void locop_checks(std::vector<Assertion>& out, SeededRng& rng) {
  const Grid1D grid = make_grid(8, 16);
  const SampledSignal phi = unit_gaussian(grid);
  const SampledSignal phi_b = sample(gaussian_family(2.0), grid);
  BandLimitedOptions opts;
  opts.max_shift_time = 1.5;
  const SampledSignal f = random_bandlimited(grid, rng, opts);
  const SampledSignal g = random_bandlimited(grid, rng, opts);

  SampledSymbol ones(grid, 1), gauss(grid, 1), rnd(grid, 1);
  for (int r = 0; r < ones.rows(); ++r) {
    for (int c = 0; c < ones.cols(); ++c) {
      const double x = ones.x_at(r), w = ones.omega_at(c);
      ones.at(r, c) = 1.0;
      gauss.at(r, c) = std::exp(-std::numbers::pi * (x * x + w * w));
      rnd.at(r, c) = cplx(rng.normal(), rng.normal()) * std::exp(-0.25 * (x * x + w * w));
    }
  }
  const double fn = lp_norm(f, kTwo);
  {
    SampledSignal d = apply_locop(ones, phi, phi, f);
    for (int j = 0; j < grid.N(); ++j) d.samples[j] -= f.samples[j];
    out.push_back(Assertion::at_most("locop.identity", lp_norm(d, kTwo) / fn, 0.0, 1e-6));
  }

  const SampledSignal af = apply_locop(rnd, phi_b, phi, f);
  const cplx lhs = inner_product(af, g);
  const cplx weak = weak_pairing(rnd, phi_b, phi, f, g);
  out.push_back(Assertion::at_most("locop.weak_pairing", std::abs(lhs - weak), 0.0, 1e-10 * std::abs(weak)));

  SampledSymbol rnd_conj = rnd;
  for (auto& z : rnd_conj.samples) z = std::conj(z);
  const cplx rhs = inner_product(f, apply_locop(rnd_conj, phi, phi_b, g));
  out.push_back(Assertion::at_most("locop.adjoint", std::abs(lhs - rhs), 0.0, 1e-10 * std::abs(lhs)));

  {
    const cplx c1(0.5, -1.0), c2(-2.0, 0.25);
    SampledSignal comb = scaled(f, c1);
    for (int j = 0; j < grid.N(); ++j) comb.samples[j] += c2 * g.samples[j];
    SampledSignal expect = scaled(af, c1);
    const SampledSignal ag = apply_locop(rnd, phi_b, phi, g);
    for (int j = 0; j < grid.N(); ++j) expect.samples[j] += c2 * ag.samples[j];
    const SampledSignal got = apply_locop(rnd, phi_b, phi, comb);
    out.push_back(Assertion::at_most("locop.linearity", max_abs_diff(got.samples, expect.samples), 0.0,
                                     1e-12 * max_abs(expect.samples)));
  }

  const KernelMatrix K = build_kernel(gauss, phi_b, phi);
  {
    const SampledSignal via_kernel = apply_kernel(K, f);
    const SampledSignal direct = apply_locop(gauss, phi_b, phi, f);
    SampledSignal d = via_kernel;
    for (int j = 0; j < grid.N(); ++j) d.samples[j] -= direct.samples[j];
    out.push_back(Assertion::at_most("locop.kernel_consistency", lp_norm(d, kTwo) / lp_norm(direct, kTwo), 0.0, 1e-8));
  }
  {
    const Grid1D small = make_grid(4, 8);
    SampledSymbol a(small, 1);
    for (auto& z : a.samples) z = cplx(rng.normal(), rng.normal());
    const SampledSignal w1 = sample(gaussian_family(1.0), small);
    const SampledSignal w2 = sample(chirped_gaussian(2.0, 1.0), small);
    const KernelMatrix fast = build_kernel(a, w1, w2);
    const KernelMatrix ref = build_kernel_direct(a, w1, w2);
    out.push_back(Assertion::at_most("locop.kernel_direct", max_abs_diff(fast.entries, ref.entries), 0.0,
                                     1e-10 * max_abs(ref.entries)));
  }
  {
    const SchurReport s = schur_report(K);
    const double op = opnorm_l2(K).value;
    out.push_back(Assertion::at_most("locop.schur_dominance", op, std::sqrt(s.c_sup_y * s.c_sup_x),
                                     1e-6 * std::sqrt(s.c_sup_y * s.c_sup_x)));
    const KernelMatrix Kid = build_kernel(ones, phi, phi);
    out.push_back(Assertion::equal("locop.identity_opnorm", opnorm_l2(Kid).value, 1.0, 1e-4));
  }
}

void lieb_checks(std::vector<Assertion>& out, SeededRng& rng) {
  const Grid1D grid = make_grid(8, 16);
  const SampledSignal phi = sample(gaussian_family(1.0), grid);
  const LiebResult eq = lieb_check(kTwo, kTwo, {{phi, phi}});
  out.push_back(Assertion::equal("lieb.equality_case", eq.max_ratio, 1.0, 1e-6));
  std::vector<std::pair<SampledSignal, SampledSignal>> trials;
  BandLimitedOptions opts;
  opts.max_shift_time = 1.5;
  for (int t = 0; t < 25; ++t) trials.emplace_back(random_bandlimited(grid, rng, opts), random_bandlimited(grid, rng, opts));
  const ExtendedExponent four(4.0);
  const LiebResult res = lieb_check(four, kTwo, trials);
  out.push_back(Assertion::at_most("lieb.p4_r2", res.max_ratio, res.constant, 1e-3 * res.constant));
}

}  // namespace

std::vector<Assertion> run_verification_suite(std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<Assertion> out;
  grid_checks(out);
  transform_checks(out, rng);
  norm_checks(out, rng);
  locop_checks(out, rng);
  lieb_checks(out, rng);
  return out;
}

}  // namespace tfsharp
