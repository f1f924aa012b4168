#include "tfsharp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tfsharp/families.hpp"
#include "tfsharp/norms.hpp"
#include "tfsharp/transforms.hpp"

namespace tfsharp {

namespace {

int next_power_of_two(double v) {
  int m = 1;
  while (m < v) m *= 2;
  return m;
}

void check_lambdas(const std::vector<double>& lambdas) {
  if (lambdas.size() < 4) throw std::invalid_argument("scan needs at least 4 lambda values");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw std::invalid_argument("lambda values must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw std::invalid_argument("lambda values must be strictly increasing");
    }
  }
}

// Exponents keyed by their reciprocal, so equal exponents share cached work.
template <typename V>
using ByExponent = std::map<double, V>;

}  // namespace

double ScalingFitResult::fitted(double lambda) const {
  return std::exp(intercept + slope * std::log(lambda));
}

ScalingFitResult fit_scaling(const std::vector<double>& lambdas, const std::vector<double>& values) {
  if (lambdas.size() != values.size()) throw std::invalid_argument("fit_scaling: length mismatch");
  if (lambdas.size() < 4) throw std::invalid_argument("fit_scaling: need at least 4 points");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw std::invalid_argument("fit_scaling: lambdas must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw std::invalid_argument("fit_scaling: lambdas must be strictly increasing");
    }
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("fit_scaling: values must be positive and finite");
    }
  }
  const double n = static_cast<double>(lambdas.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    sx += std::log(lambdas[i]);
    sy += std::log(values[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double dx = std::log(lambdas[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  ScalingFitResult out;
  out.lambdas = lambdas;
  out.values = values;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double pred = out.intercept + out.slope * std::log(lambdas[i]);
    out.max_residual = std::max(out.max_residual, std::abs(std::log(values[i]) - pred));
  }
  return out;
}

ScalingFitResult fit_scaling(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> l, v;
  for (const auto& [a, b] : points) {
    l.push_back(a);
    v.push_back(b);
  }
  return fit_scaling(l, v);
}

std::vector<double> default_lambdas() { return {4.0, 8.0, 16.0, 32.0, 64.0}; }

std::vector<ExtendedExponent> lattice_exponents() {
  return {ExtendedExponent::infinity(), ExtendedExponent(4.0), ExtendedExponent(2.0),
          ExtendedExponent::parse("4/3"), ExtendedExponent(1.0)};
}

std::vector<std::pair<ExtendedExponent, ExtendedExponent>> lattice_points() {
  std::vector<std::pair<ExtendedExponent, ExtendedExponent>> out;
  for (const auto& a : lattice_exponents()) {
    for (const auto& b : lattice_exponents()) out.emplace_back(a, b);
  }
  return out;
}

double lieb_constant(const ExtendedExponent& p) {
  // p'^(1/p') / p^(1/p) = exp(-(1/p') log(1/p') + (1/p) log(1/p))
  auto xlogx = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
  const double a = p.reciprocal();
  const double b = p.conjugate_reciprocal();
  return std::sqrt(std::exp(xlogx(a) - xlogx(b)));
}

LiebResult lieb_check(const ExtendedExponent& p, const ExtendedExponent& r,
                      const std::vector<std::pair<SampledSignal, SampledSignal>>& trials) {
  constexpr double eps = 1e-12;
  if (p.reciprocal() > 0.5 + eps) throw std::invalid_argument("lieb_check: need p >= 2");
  if (p.conjugate_reciprocal() < std::max(r.reciprocal(), r.conjugate_reciprocal()) - eps) {
    throw std::invalid_argument("lieb_check: need p' <= min(r, r')");
  }
  if (trials.empty()) throw std::invalid_argument("lieb_check: no trials");
  LiebResult out;
  out.constant = lieb_constant(p);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& [f, g] = trials[i];
    const double denom = lp_norm(g, r.conjugate()) * lp_norm(f, r);
    if (!(denom > 0.0)) throw std::invalid_argument("lieb_check: zero trial signal");
    const double ratio = lp_norm(stft(f, g), p) / denom;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.worst_trial = i;
    }
  }
  out.pass = out.max_ratio <= out.constant * (1.0 + 1e-3);
  return out;
}

std::string_view point_status_name(PointStatus s) {
  switch (s) {
    case PointStatus::Pass: return "pass";
    case PointStatus::Fail: return "fail";
    case PointStatus::Boundary: return "boundary";
  }
  return "";
}

double RegionVerdict::max_residual() const {
  double r = 0.0;
  for (const auto& p : probes) r = std::max(r, p.fit.max_residual);
  return r;
}

void classify(RegionVerdict& v) {
  if (v.probes.empty()) throw std::invalid_argument("classify: verdict has no probes");
  v.measured_slope = v.probes.front().fit.slope;
  for (const auto& p : v.probes) v.measured_slope = std::max(v.measured_slope, p.fit.slope);
  v.classified_bounded = v.measured_slope <= v.margin;
  // Equality cases of the region inequality, and growth too slow to separate
  // from the margin, are excluded.
  const bool boundary = v.predicted_growth >= 0.0 && v.predicted_growth < 2.0 * v.margin;
  if (boundary) {
    v.status = PointStatus::Boundary;
  } else {
    v.status = v.classified_bounded == v.predicted_bounded ? PointStatus::Pass : PointStatus::Fail;
  }
}

// ---- STFT scan ----

bool stft_region_contains(const ExtendedExponent& p, const ExtendedExponent& q) {
  // p >= q'  <=>  1/p <= 1 - 1/q;  q >= 2  <=>  1/q <= 1/2.
  return p.reciprocal() <= q.conjugate_reciprocal() && q.reciprocal() <= 0.5;
}

int stft_scan_resolution(double lambda, const StftScanOptions& opts) {
  int m = 64;
  while (max_alias_free_lambda(Grid1D(opts.L, m), opts.profile_radius) < lambda) m *= 2;
  return m;
}

StftScanData collect_stft_scan(const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
                               const std::vector<double>& lambdas, const StftScanOptions& opts) {
  check_lambdas(lambdas);
  StftScanData data;
  data.points = points;
  data.lambdas = lambdas;
  data.samples.assign(points.size(), std::vector<StftScanSample>(lambdas.size()));

  ByExponent<ExtendedExponent> ps, qs;
  for (const auto& [p, q] : points) {
    ps.emplace(p.reciprocal(), p);
    qs.emplace(q.reciprocal(), q);
  }
  const WindowSpec profile = bump(0.0, opts.profile_radius);

  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const double lambda = lambdas[li];
    const Grid1D grid = make_grid(opts.L, stft_scan_resolution(lambda, opts));
    const SampledSignal phi = sample(gaussian_family(1.0), grid);
    const SampledSignal gauss = sample(gaussian_family(lambda), grid);
    const SampledSignal chirp = sample(chirp_family(profile, lambda), grid);
    if (chirp.alias_warning) throw std::invalid_argument("stft scan: lambda beyond aliasing guard");

    ByExponent<std::vector<double>> local_v, local_g, local_h;
    {
      const SampledSymbol v = stft(gauss, phi);
      for (const auto& [key, p] : ps) local_v[key] = cube_local_norms(v, p);
    }
    for (const auto& [key, p] : ps) {
      local_g[key] = cube_local_norms(gauss, p);
      local_h[key] = cube_local_norms(chirp, p);
    }
    ByExponent<double> lq_vh;
    {
      const SampledSymbol vh = stft(chirp, phi);
      for (const auto& [key, q] : qs) lq_vh[key] = lp_norm(vh, q);
    }
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
      const auto& [p, q] = points[pi];
      StftScanSample& s = data.samples[pi][li];
      s.lambda = lambda;
      s.stft_gaussian = lq_combine(local_v[p.reciprocal()], q);
      s.gaussian = lq_combine(local_g[p.reciprocal()], q);
      s.chirp = lq_combine(local_h[p.reciprocal()], q);
      s.stft_chirp = lq_vh[q.reciprocal()];
    }
  }
  return data;
}

RegionVerdict stft_verdict(const StftScanData& data, std::size_t point, double margin) {
  const auto& [p, q] = data.points.at(point);
  const auto& samples = data.samples.at(point);
  RegionVerdict v;
  v.first = p;
  v.second = q;
  v.margin = margin;
  v.predicted_bounded = stft_region_contains(p, q);

  std::vector<double> ratio_a, ratio_b;
  for (const auto& s : samples) {
    ratio_a.push_back(s.stft_gaussian / s.gaussian);
    ratio_b.push_back(s.stft_chirp / s.chirp);
  }
  const double pred_a = 0.5 * (p.reciprocal() + q.reciprocal() - 1.0);
  v.probes.push_back({"A", pred_a, fit_scaling(data.lambdas, ratio_a)});
  v.predicted_growth = pred_a;
  if (p.reciprocal() < q.reciprocal()) {
    const double pred_b = q.reciprocal() - 0.5;
    v.probes.push_back({"B", pred_b, fit_scaling(data.lambdas, ratio_b)});
    v.predicted_growth = std::max(v.predicted_growth, pred_b);
  }
  classify(v);
  return v;
}

std::vector<RegionVerdict> stft_region_scan(
    const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
    const std::vector<double>& lambdas, const StftScanOptions& opts) {
  const StftScanData data = collect_stft_scan(points, lambdas, opts);
  std::vector<RegionVerdict> out;
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back(stft_verdict(data, i, opts.margin));
  return out;
}

RegionVerdict stft_region_scan(const ExtendedExponent& p, const ExtendedExponent& q,
                               const std::vector<double>& lambdas, const StftScanOptions& opts) {
  return stft_region_scan({{p, q}}, lambdas, opts).front();
}

// ---- Localization-operator scan ----

bool locop_region_contains(const ExtendedExponent& q, const ExtendedExponent& r) {
  return q.reciprocal() >= std::abs(r.reciprocal() - 0.5);
}

int locop_scan_resolution(double lambda, const LocopScanOptions& opts) {
  int m = std::max(64, next_power_of_two(8.0 * lambda * opts.profile_radius));
  while (max_alias_free_lambda(Grid1D(opts.L, m), opts.profile_radius) < lambda) m *= 2;
  return m;
}

LocopScanData collect_locop_scan(const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
                                 const std::vector<double>& lambdas, const LocopScanOptions& opts) {
  check_lambdas(lambdas);
  LocopScanData data;
  data.points = points;
  data.lambdas = lambdas;
  data.samples.assign(points.size(), std::vector<LocopScanSample>(lambdas.size()));
  const WindowSpec profile = bump(0.0, opts.profile_radius);
  const WindowSpec window = opts.windows == LocopWindowKind::Bump
                                ? bump(0.0, opts.window_parameter)
                                : gaussian_family(opts.window_parameter);

  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const double lambda = lambdas[li];
    const Grid1D grid = make_grid(opts.L, locop_scan_resolution(lambda, opts));
    const SampledSignal chirp = sample(chirp_family(profile, lambda), grid);
    SampledSignal f = chirp;
    for (auto& z : f.samples) z = std::conj(z);
    const SampledSymbol a = sharpness_symbol(profile, lambda, grid);
    const SampledSignal w = sample(window, grid);
    const SampledSignal chi = sample(canonical_bump(), grid);
    SampledSignal out = apply_locop(a, w, w, f);
    for (int j = 0; j < grid.N(); ++j) out.samples[j] *= chi.samples[j];

    ByExponent<std::vector<double>> symbol_local;
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
      const auto& [q, r] = points[pi];
      // For r < 2 the estimate is read through its adjoint on L^{r'}.
      const ExtendedExponent re = r.reciprocal() > 0.5 ? r.conjugate() : r;
      const ExtendedExponent sp = opts.symbol_p.value_or(q);
      auto it = symbol_local.find(sp.reciprocal());
      if (it == symbol_local.end()) {
        it = symbol_local.emplace(sp.reciprocal(), cube_local_norms(a, sp)).first;
      }
      LocopScanSample& s = data.samples[pi][li];
      s.lambda = lambda;
      s.output = lp_norm(out, re);
      s.symbol = lq_combine(it->second, q);
      s.input = amalgam_norm(f, opts.s1.value_or(re), opts.s2.value_or(re));
    }
  }
  return data;
}

RegionVerdict locop_verdict(const LocopScanData& data, std::size_t point, double margin) {
  const auto& [q, r] = data.points.at(point);
  RegionVerdict v;
  v.first = q;
  v.second = r;
  v.margin = margin;
  v.predicted_bounded = locop_region_contains(q, r);
  v.predicted_growth = std::abs(r.reciprocal() - 0.5) - q.reciprocal();
  std::vector<double> ratios;
  for (const auto& s : data.samples.at(point)) ratios.push_back(s.ratio());
  v.probes.push_back({"R", v.predicted_growth, fit_scaling(data.lambdas, ratios)});
  classify(v);
  return v;
}

std::vector<RegionVerdict> locop_region_scan(
    const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
    const std::vector<double>& lambdas, const LocopScanOptions& opts) {
  const LocopScanData data = collect_locop_scan(points, lambdas, opts);
  std::vector<RegionVerdict> out;
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back(locop_verdict(data, i, opts.margin));
  return out;
}

RegionVerdict locop_region_scan(const ExtendedExponent& q, const ExtendedExponent& r,
                                const std::vector<double>& lambdas, const LocopScanOptions& opts) {
  return locop_region_scan({{q, r}}, lambdas, opts).front();
}

LocopScanOptions lq_scan_options() {
  LocopScanOptions opts;
  opts.windows = LocopWindowKind::Gaussian;
  opts.window_parameter = 1.0;
  return opts;
}

std::vector<RegionVerdict> locop_lq_scan(
    const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
    const std::vector<double>& lambdas) {
  return locop_region_scan(points, lambdas, lq_scan_options());
}

RegionVerdict locop_lq_scan(const ExtendedExponent& q, const ExtendedExponent& r,
                            const std::vector<double>& lambdas) {
  return locop_region_scan(q, r, lambdas, lq_scan_options());
}

double max_octave_drift(const std::vector<LocopScanSample>& samples) {
  double worst = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    worst = std::max(worst, samples[i].ratio() / samples[i - 1].ratio());
  }
  return worst;
}

// ---- Schur consistency ----

std::vector<SchurCase> default_schur_cases(const Grid1D& grid) {
  SampledSignal phi = sample(gaussian_family(1.0), grid);
  const double norm = lp_norm(phi, ExtendedExponent(2.0));
  for (auto& z : phi.samples) z /= norm;

  SampledSymbol gauss(grid, 1), ones(grid, 1), cube(grid, 1);
  for (int r = 0; r < gauss.rows(); ++r) {
    const double x = gauss.x_at(r);
    for (int c = 0; c < gauss.cols(); ++c) {
      const double w = gauss.omega_at(c);
      gauss.at(r, c) = std::exp(-std::numbers::pi * (x * x + w * w));
      ones.at(r, c) = 1.0;
      cube.at(r, c) = (0.0 <= x && x < 1.0 && 0.0 <= w && w < 1.0) ? 1.0 : 0.0;
    }
  }
  std::vector<SchurCase> out;
  out.push_back({"gaussian-symbol", build_kernel(gauss, phi, phi)});
  out.push_back({"identity", build_kernel(ones, phi, phi)});
  out.push_back({"unit-cube", build_kernel(cube, phi, phi)});
  for (auto& c : out) c.kernel.provenance = c.name;
  return out;
}

std::vector<SchurSuiteEntry> schur_consistency_suite(const std::vector<SchurCase>& cases,
                                                     const std::vector<SampledSignal>& probes) {
  const ExtendedExponent one(1.0), two(2.0), four(4.0), inf = ExtendedExponent::infinity();
  const std::vector<std::pair<ExtendedExponent, ExtendedExponent>> pairs = {
      {one, one}, {two, two}, {inf, inf}, {one, inf}, {inf, one}, {two, four}, {four, two}};
  std::vector<SchurSuiteEntry> out;
  for (const auto& c : cases) {
    SchurSuiteEntry e;
    e.name = c.name;
    e.schur = schur_report(c.kernel);
    const auto& s = e.schur;
    e.finite = std::isfinite(s.c_sup_x) && std::isfinite(s.c_sup_y) && std::isfinite(s.amalgam_a) &&
               std::isfinite(s.amalgam_b);
    e.opnorm = opnorm_l2(c.kernel).value;
    e.classical_bound = std::sqrt(s.c_sup_y * s.c_sup_x);
    e.l2_ok = e.opnorm <= e.classical_bound * (1.0 + 1e-6);
    e.amalgam_budget =
        e.budget_constant * std::max({s.amalgam_a, s.amalgam_b, s.c_sup_x, s.c_sup_y});
    for (const auto& f : probes) {
      const SampledSignal g = apply_kernel(c.kernel, f);
      for (const auto& [p, q] : pairs) {
        const double den = amalgam_norm(f, p, q);
        if (den > 0.0) e.max_probe_ratio = std::max(e.max_probe_ratio, amalgam_norm(g, p, q) / den);
      }
    }
    e.budget_ok = e.max_probe_ratio <= e.amalgam_budget * (1.0 + 1e-9);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace tfsharp
