// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: tfsharp_acceptance [NN ...]   (no arguments runs every criterion)

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tfsharp/experiments.hpp"
#include "tfsharp/families.hpp"
#include "tfsharp/locop.hpp"
#include "tfsharp/norms.hpp"
#include "tfsharp/transforms.hpp"

using namespace tfsharp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const ExtendedExponent kOne(1.0);
const ExtendedExponent kTwo(2.0);
const ExtendedExponent kInf = ExtendedExponent::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string ex(const ExtendedExponent& e) { return e.to_string(); }

SampledSignal unit_gaussian(const Grid1D& g) {
  SampledSignal phi = sample(gaussian_family(1.0), g);
  const double n = lp_norm(phi, kTwo);
  for (auto& z : phi.samples) z /= n;
  return phi;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  return fit_scaling(x, y).slope;
}

// 1. ||V_g f||_2 = ||f||_2 ||g||_2.
Outcome orthogonality() {
  const Grid1D g = make_grid(16, 16);
  const std::vector<WindowSpec> fam = {gaussian_family(1.0), gaussian_family(2.5), bump(0.0, 1.5),
                                       chirp_family(bump(0.0, 2.0), 3.0), chirped_gaussian(0.7, 1.2)};
  double worst = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (i == j) continue;
      const SampledSignal f = sample(fam[i], g), w = sample(fam[j], g);
      const double expect = lp_norm(f, kTwo) * lp_norm(w, kTwo);
      worst = std::max(worst, std::abs(lp_norm(stft(f, w), kTwo) - expect) / expect);
      ++pairs;
    }
  }
  return {pairs == 20 && worst < 1e-6, std::to_string(pairs) + " pairs, max relative error " + fmt(worst) + " < 1e-06"};
}

// 2. Closed form of V_phi phi_lambda.
Outcome gaussian_oracle() {
  const Grid1D g = make_grid(16, 16);
  const SampledSignal phi = sample(gaussian_family(1.0), g);
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const SampledSymbol v = stft(sample(gaussian_family(lambda), g), phi);
    const double s = 1.0 + lambda;
    for (int r = 0; r < v.rows(); ++r) {
      for (int k = 0; k < v.cols(); ++k) {
        const double x = v.x_at(r), w = v.omega_at(k);
        const cplx exact = std::exp(-kPi * lambda * x * x / s - kPi * w * w / s) / std::sqrt(s) *
                           std::polar(1.0, -2.0 * kPi * w * x / s);
        worst = std::max(worst, std::abs(v.at(r, k) - exact));
      }
    }
  }
  return {worst < 1e-6, "max lattice error " + fmt(worst) + " < 1e-06"};
}

// 3. Lieb's inequality: equality case and the p = 4, r = 2 constant.
Outcome lieb() {
  const Grid1D g = make_grid(8, 16);
  const SampledSignal phi = sample(gaussian_family(1.0), g);
  const LiebResult eq = lieb_check(kTwo, kTwo, {{phi, phi}});
  SeededRng rng(2024);
  BandLimitedOptions opts;
  opts.max_shift_time = 1.5;
  std::vector<std::pair<SampledSignal, SampledSignal>> trials;
  for (int t = 0; t < 100; ++t) trials.emplace_back(random_bandlimited(g, rng, opts), random_bandlimited(g, rng, opts));
  const ExtendedExponent four(4.0);
  const LiebResult res = lieb_check(four, kTwo, trials);
  const double bound = std::sqrt(std::pow(4.0 / 3.0, 0.75) / std::pow(4.0, 0.25)) * (1.0 + 1e-3);
  const bool pass = std::abs(eq.max_ratio - 1.0) < 1e-6 && res.max_ratio <= bound;
  return {pass, "equality ratio " + fmt(eq.max_ratio) + ", max ratio over 100 trials " + fmt(res.max_ratio) +
                    " <= " + fmt(bound)};
}

// 4. Amalgam norms: W(L^p, L^p) = L^p, inclusion and Hoelder.
Outcome amalgam_identities() {
  const Grid1D g = make_grid(8, 8);
  SeededRng rng(77);
  const auto exps = lattice_exponents();
  double eq = 0.0, incl = 0.0, holder = 0.0;
  for (int t = 0; t < 100; ++t) {
    const SampledSignal f = random_bandlimited(g, rng);
    const SampledSignal h = random_bandlimited(g, rng);
    SampledSignal fh = f;
    for (int j = 0; j < g.N(); ++j) fh[j] *= h[j];
    const double fh1 = amalgam_norm(fh, kOne, kOne);
    for (const auto& p : exps) {
      const double lp = lp_norm(f, p);
      eq = std::max(eq, std::abs(amalgam_norm(f, p, p) - lp) / lp);
      for (const auto& q : exps) {
        const double base = amalgam_norm(f, p, q);
        for (const auto& p2 : exps) {
          for (const auto& q2 : exps) {
            if (p2.reciprocal() >= p.reciprocal() && q2.reciprocal() <= q.reciprocal()) {
              incl = std::max(incl, amalgam_norm(f, p2, q2) / base);
            }
          }
        }
        holder = std::max(holder, fh1 / (base * amalgam_norm(h, p.conjugate(), q.conjugate())));
      }
    }
  }
  const bool pass = eq <= 1e-12 && incl <= 1.0 + 1e-12 && holder <= 1.0 + 1e-12;
  return {pass, "max |W(p,p) - L^p| rel " + fmt(eq) + ", inclusion ratio " + fmt(incl) + ", Hoelder ratio " +
                    fmt(holder) + " (100 signals)"};
}

// 5. ||F h_lambda||_q ~ lambda^(1/q - 1/2).
Outcome chirp_scaling() {
  const Grid1D g = make_grid(8, 256);
  const std::vector<double> lambdas = default_lambdas();
  const double guard = max_alias_free_lambda(g, canonical_bump().support_radius());
  bool pass = guard >= lambdas.back();
  std::string detail = "guard " + fmt(guard) + ";";
  for (const char* qs : {"1", "4/3", "2", "4", "inf"}) {
    const ExtendedExponent q = ExtendedExponent::parse(qs);
    std::vector<double> vals;
    for (double l : lambdas) {
      const SampledSignal h = sample(chirp_family(canonical_bump(), l), g);
      pass = pass && !h.alias_warning;
      vals.push_back(lp_norm(fourier(h), q));
    }
    const double s = slope_of(lambdas, vals);
    const double predicted = q.reciprocal() - 0.5;
    const double tol = q == kTwo ? 0.01 : 0.05;
    pass = pass && std::abs(s - predicted) <= tol;
    detail += " q=" + ex(q) + " slope " + fmt(s) + " (predicted " + fmt(predicted) + " +-" + fmt(tol) + ")";
  }
  return {pass, detail};
}

// 6. ||phi_lambda||_W(L^p, L^q) ~ lambda^(-1/(2p)).
Outcome gaussian_amalgam() {
  const Grid1D g = make_grid(8, 256);
  const std::vector<double> lambdas = default_lambdas();
  bool pass = true;
  std::string detail;
  for (const auto& [ps, qs] : std::vector<std::pair<const char*, const char*>>{{"1", "2"}, {"2", "2"}, {"inf", "2"}, {"2", "1"}}) {
    const ExtendedExponent p = ExtendedExponent::parse(ps), q = ExtendedExponent::parse(qs);
    std::vector<double> vals;
    for (double l : lambdas) vals.push_back(amalgam_norm(sample(gaussian_family(l), g), p, q));
    const double s = slope_of(lambdas, vals);
    const double predicted = -0.5 * p.reciprocal();
    pass = pass && std::abs(s - predicted) <= 0.05;
    detail += " (" + ex(p) + "," + ex(q) + ") slope " + fmt(s) + " vs " + fmt(predicted) + ";";
  }
  return {pass, detail + " tol 0.05"};
}

// 7. ||V_phi phi_lambda||_W(L^p, L^q) ~ lambda^(-1/(2q')).
Outcome stft_amalgam() {
  const std::vector<std::pair<ExtendedExponent, ExtendedExponent>> pts = {
      {kTwo, kTwo}, {kInf, kTwo}, {kTwo, ExtendedExponent(4.0)}};
  const StftScanData data = collect_stft_scan(pts, default_lambdas());
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> vals;
    for (const auto& s : data.samples[i]) vals.push_back(s.stft_gaussian);
    const double s = slope_of(data.lambdas, vals);
    const double predicted = -0.5 * pts[i].second.conjugate_reciprocal();
    pass = pass && std::abs(s - predicted) <= 0.07;
    detail += " (" + ex(pts[i].first) + "," + ex(pts[i].second) + ") slope " + fmt(s) + " vs " + fmt(predicted) + ";";
  }
  return {pass, detail + " tol 0.07"};
}

std::string boundary_list(const std::vector<RegionVerdict>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (v.status == PointStatus::Boundary) out += " (" + ex(v.first) + "," + ex(v.second) + ")";
  }
  return out.empty() ? " none" : out;
}

// 8. STFT boundedness region on the 5 x 5 lattice.
Outcome stft_region() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto vs = stft_region_scan(lattice_points(), default_lambdas());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int checked = 0, agree = 0;
  for (const auto& v : vs) {
    if (v.status == PointStatus::Boundary) continue;
    const double ip = v.first.reciprocal(), iq = v.second.reciprocal();
    const bool inside = ip <= 1.0 - iq && iq <= 0.5;
    ++checked;
    agree += v.classified_bounded == inside;
  }
  const bool pass = vs.size() == 25 && agree == checked && secs <= 600.0;
  return {pass, std::to_string(agree) + "/" + std::to_string(checked) + " non-boundary points agree; excluded:" +
                    boundary_list(vs) + "; " + fmt(secs) + " s"};
}

// 9. Identity symbol, kernel consistency and adjoint.
Outcome locop_identity() {
  const Grid1D g = make_grid(8, 16);
  const SampledSignal phi = unit_gaussian(g);
  SeededRng rng(9);
  BandLimitedOptions opts;
  opts.max_shift_time = 1.5;
  const SampledSignal f = random_bandlimited(g, rng, opts);
  const SampledSignal h = random_bandlimited(g, rng, opts);
  SampledSymbol ones(g, 1), a(g, 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      const double x = a.x_at(r), w = a.omega_at(k);
      ones.at(r, k) = 1.0;
      a.at(r, k) = cplx(rng.normal(), rng.normal()) * std::exp(-0.25 * (x * x + w * w));
    }
  }
  SampledSignal d = apply_locop(ones, phi, phi, f);
  for (int j = 0; j < g.N(); ++j) d[j] -= f[j];
  const double id = lp_norm(d, kTwo) / lp_norm(f, kTwo);

  const SampledSignal phi2 = sample(chirped_gaussian(2.0, 1.0), g);
  const SampledSignal direct = apply_locop(a, phi, phi2, f);
  const SampledSignal via = apply_kernel(build_kernel(a, phi, phi2), f);
  const double kc = max_abs_diff(via.samples, direct.samples) / [&] {
    double s = 0.0;
    for (const auto& z : direct.samples) s = std::max(s, std::abs(z));
    return s;
  }();

  SampledSymbol ac = a;
  for (auto& z : ac.samples) z = std::conj(z);
  const cplx lhs = inner_product(direct, h);
  const cplx rhs = inner_product(f, apply_locop(ac, phi2, phi, h));
  const double adj = std::abs(lhs - rhs) / std::abs(lhs);
  const bool pass = id < 1e-6 && kc < 1e-8 && adj < 1e-10;
  return {pass, "identity error " + fmt(id) + " < 1e-06, kernel vs operator (N=" + std::to_string(g.N()) + ") " +
                    fmt(kc) + " < 1e-08, adjoint " + fmt(adj) + " < 1e-10"};
}

// 10. Classical Schur test and finiteness of the amalgam quantities.
Outcome schur_dominance() {
  const Grid1D g = make_grid(8, 16);
  const auto probes = default_probe_set(unit_gaussian(g), 10);
  const auto entries = schur_consistency_suite(default_schur_cases(g), probes);
  bool pass = !entries.empty();
  std::string detail;
  for (const auto& e : entries) {
    const bool ok = e.finite && e.opnorm <= e.classical_bound * (1.0 + 1e-6);
    pass = pass && ok;
    detail += " " + e.name + ": " + fmt(e.opnorm) + " <= " + fmt(e.classical_bound) + (e.finite ? "" : " (non-finite)") + ";";
  }
  return {pass, detail};
}

// 11. Sharpness ratio exponent 1/2 - 1/q - 1/r.
Outcome sharpness_exponent() {
  const std::vector<std::pair<ExtendedExponent, ExtendedExponent>> pts = {
      {ExtendedExponent(8.0), ExtendedExponent(8.0)},
      {ExtendedExponent(4.0), ExtendedExponent(4.0)},
      {ExtendedExponent(4.0), kTwo}};
  const LocopScanOptions opts;
  const LocopScanData data = collect_locop_scan(pts, default_lambdas(), opts);
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> ratios;
    for (const auto& s : data.samples[i]) ratios.push_back(s.ratio());
    const double s = slope_of(data.lambdas, ratios);
    const double iq = pts[i].first.reciprocal(), ir = pts[i].second.reciprocal();
    const double predicted = 0.5 - iq - ir;
    // Sign with a zero band of one classification margin: +1 outside the
    // region, 0 on its boundary, -1 in its interior.
    const double gap = iq - std::abs(ir - 0.5);
    const int expected_sign = gap < 0.0 ? 1 : (gap == 0.0 ? 0 : -1);
    const int sign = s > opts.margin ? 1 : (s < -opts.margin ? -1 : 0);
    pass = pass && std::abs(s - predicted) <= 0.07 && sign == expected_sign;
    detail += " (" + ex(pts[i].first) + "," + ex(pts[i].second) + ") slope " + fmt(s) + " vs " + fmt(predicted) +
              " sign " + std::to_string(sign) + "/" + std::to_string(expected_sign) + ";";
  }
  return {pass, detail + " tol 0.07"};
}

// 12. Localization-operator region on the (1/r, 1/q) lattice.
Outcome locop_region() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = locop_region_scan(lattice_points(), default_lambdas());
  const auto b = locop_lq_scan(lattice_points(), default_lambdas());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int checked = 0, agree = 0;
  for (const auto* vs : {&a, &b}) {
    for (const auto& v : *vs) {
      if (v.status == PointStatus::Boundary) continue;
      const bool inside = v.first.reciprocal() >= std::abs(v.second.reciprocal() - 0.5);
      ++checked;
      agree += v.classified_bounded == inside;
    }
  }
  const bool pass = a.size() == 25 && b.size() == 25 && agree == checked && secs <= 1200.0;
  return {pass, std::to_string(agree) + "/" + std::to_string(checked) + " non-boundary points agree; excluded:" +
                    boundary_list(a) + "; " + fmt(secs) + " s"};
}

// 13. The STFT and Triebel modulation norms are equivalent on Gaussians.
Outcome triebel_equivalence() {
  const Grid1D g = make_grid(16, 32);
  std::vector<double> lambdas;
  for (int k = -2; k <= 4; ++k) lambdas.push_back(std::ldexp(1.0, k));
  bool pass = true;
  std::string detail;
  for (const auto& [ps, qs] : std::vector<std::pair<const char*, const char*>>{{"1", "1"}, {"2", "2"}, {"2", "4"}}) {
    const ExtendedExponent p = ExtendedExponent::parse(ps), q = ExtendedExponent::parse(qs);
    double smin = INFINITY, smax = 0.0, tmin = INFINITY, tmax = 0.0, rmin = INFINITY, rmax = 0.0;
    for (double l : lambdas) {
      const SampledSignal f = sample(gaussian_family(l), g);
      const double s = modulation_norm(f, p, q), t = modulation_norm_triebel(f, p, q);
      smin = std::min(smin, s), smax = std::max(smax, s);
      tmin = std::min(tmin, t), tmax = std::max(tmax, t);
      rmin = std::min(rmin, s / t), rmax = std::max(rmax, s / t);
    }
    const bool ok = rmax / rmin < 2.0 && smax / smin >= 4.0 && tmax / tmin >= 4.0;
    pass = pass && ok;
    detail += " (" + ex(p) + "," + ex(q) + ") ratio varies " + fmt(rmax / rmin) + "x, norms vary " +
              fmt(smax / smin) + "x / " + fmt(tmax / tmin) + "x;";
  }
  return {pass, detail + " need < 2x and >= 4x"};
}

// 14. Bernstein: ||f_R||_q / ||f_R||_p ~ R^(1/p - 1/q) for spectra in B(0, R).
Outcome bernstein() {
  const Grid1D g = make_grid(64, 64);
  const std::vector<double> radii = {1.0, 2.0, 4.0, 8.0, 16.0};
  bool pass = true;
  std::string detail;
  for (const auto& [ps, qs] : std::vector<std::pair<const char*, const char*>>{{"1", "2"}, {"2", "inf"}}) {
    const ExtendedExponent p = ExtendedExponent::parse(ps), q = ExtendedExponent::parse(qs);
    std::vector<double> vals;
    for (double R : radii) {
      const SampledSignal f = inverse_fourier(sample(bump(0.0, R), g.dual()));
      vals.push_back(lp_norm(f, q) / lp_norm(f, p));
    }
    const double s = slope_of(radii, vals);
    const double predicted = p.reciprocal() - q.reciprocal();
    pass = pass && std::abs(s - predicted) <= 0.05;
    detail += " (" + ex(p) + "," + ex(q) + ") exponent " + fmt(s) + " vs " + fmt(predicted) + ";";
  }
  return {pass, detail + " tol 0.05"};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 15. verify and each scan reproduce byte for byte.
Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / "tfsharp_acceptance_repro";
  fs::remove_all(root);
  const std::vector<std::string> commands = {"verify --seed 5", "scan-stft", "scan-locop", "scan-locop-lq"};
  for (const char* run : {"a", "b"}) {
    fs::create_directories(root / run);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      const std::string cmd = std::string(TFSHARP_CLI_PATH) + " " + commands[i] + " --out " +
                              (root / run / ("out" + std::to_string(i))).string() + " >/dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        return {false, "'" + commands[i] + "' exited with status " + std::to_string(WEXITSTATUS(status))};
      }
    }
  }
  int files = 0, same = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    const fs::path other = root / "b" / entry.path().filename();
    same += fs::exists(other) && read_file(entry.path()) == read_file(other);
  }
  const bool pass = files == 11 && same == files;
  return {pass, std::to_string(same) + "/" + std::to_string(files) + " output files byte-identical across re-runs"};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"01", "orthogonality", orthogonality},
      {"02", "gaussian-stft-oracle", gaussian_oracle},
      {"03", "lieb-constant", lieb},
      {"04", "amalgam-identities", amalgam_identities},
      {"05", "chirp-scaling", chirp_scaling},
      {"06", "gaussian-amalgam-scaling", gaussian_amalgam},
      {"07", "stft-amalgam-scaling", stft_amalgam},
      {"08", "stft-region", stft_region},
      {"09", "locop-identity-consistency", locop_identity},
      {"10", "schur-dominance", schur_dominance},
      {"11", "sharpness-exponent", sharpness_exponent},
      {"12", "locop-region", locop_region},
      {"13", "triebel-equivalence", triebel_equivalence},
      {"14", "bernstein", bernstein},
      {"15", "reproducibility", reproducibility},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_pass = true;
  int ran = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("%s AC%s %s:%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.front() == ' ' ? "" : " ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matches the arguments\n");
    return 2;
  }
  return all_pass ? 0 : 1;
}
