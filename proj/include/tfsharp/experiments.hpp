#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfsharp/exponent.hpp"
#include "tfsharp/grid.hpp"
#include "tfsharp/locop.hpp"

namespace tfsharp {

/// Least-squares fit of log(value) = slope * log(lambda) + intercept.
struct ScalingFitResult {
  std::vector<double> lambdas;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  /// max |log value - fit| over the points.
  double max_residual = 0.0;

  double fitted(double lambda) const;
};

/// Requires >= 4 points, strictly increasing lambdas, positive values.
ScalingFitResult fit_scaling(const std::vector<std::pair<double, double>>& points);
ScalingFitResult fit_scaling(const std::vector<double>& lambdas, const std::vector<double>& values);

/// Default lambda sweep {4, 8, 16, 32, 64}.
std::vector<double> default_lambdas();

/// Exponents p with 1/p in {0, 1/4, 1/2, 3/4, 1}, in increasing 1/p.
std::vector<ExtendedExponent> lattice_exponents();

struct LiebResult {
  double max_ratio = 0.0;
  double constant = 0.0;
  std::size_t worst_trial = 0;
  bool pass = false;
};

/// sqrt(p'^(1/p') / p^(1/p)); the p = inf limit is 1.
double lieb_constant(const ExtendedExponent& p);

/// max over trials (f, g) of ||V_g f||_p / (||g||_{r'} ||f||_r); passes iff the
/// maximum is <= lieb_constant(p) (1 + 1e-3). Requires p >= 2 and p' <= min(r, r').
LiebResult lieb_check(const ExtendedExponent& p, const ExtendedExponent& r,
                      const std::vector<std::pair<SampledSignal, SampledSignal>>& trials);

enum class PointStatus { Pass, Fail, Boundary };
std::string_view point_status_name(PointStatus s);

struct ProbeFit {
  std::string name;
  double predicted = 0.0;
  ScalingFitResult fit;
};

/// Verdict for one exponent point of a boundedness region.
struct RegionVerdict {
  /// (p, q) for STFT scans, (q, r) for localization scans.
  ExtendedExponent first{2.0};
  ExtendedExponent second{2.0};
  bool predicted_bounded = true;
  /// Growth exponent predicted by the extremal families (<= 0 inside the region).
  double predicted_growth = 0.0;
  /// Largest fitted slope among the probes.
  double measured_slope = 0.0;
  bool classified_bounded = true;
  double margin = 0.05;
  PointStatus status = PointStatus::Pass;
  std::vector<ProbeFit> probes;

  double max_residual() const;
};

/// Applies the classification and boundary rules to a verdict whose probes,
/// predicted_growth and predicted_bounded are filled in.
void classify(RegionVerdict& v);

// ---- STFT region (W(L^p, L^q) estimate for V_phi f) ----

struct StftScanOptions {
  int L = 8;
  double margin = 0.05;
  double profile_radius = 1.0;
};

/// Grid resolution used at a given lambda: the smallest power of two >= 64
/// whose aliasing guard admits lambda.
int stft_scan_resolution(double lambda, const StftScanOptions& opts);

struct StftScanSample {
  double lambda = 0.0;
  double stft_gaussian = 0.0;  // ||V_phi phi_lambda||_{W(L^p, L^q)}
  double gaussian = 0.0;       // ||phi_lambda||_{W(L^p, L^q)}
  double stft_chirp = 0.0;     // ||V_phi h_lambda||_{L^q}
  double chirp = 0.0;          // ||h_lambda||_{W(L^p, L^q)}
};

struct StftScanData {
  std::vector<std::pair<ExtendedExponent, ExtendedExponent>> points;  // (p, q)
  std::vector<double> lambdas;
  std::vector<std::vector<StftScanSample>> samples;                    // [point][lambda]
};

StftScanData collect_stft_scan(const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
                               const std::vector<double>& lambdas, const StftScanOptions& opts = {});
RegionVerdict stft_verdict(const StftScanData& data, std::size_t point, double margin);

std::vector<RegionVerdict> stft_region_scan(
    const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
    const std::vector<double>& lambdas, const StftScanOptions& opts = {});
RegionVerdict stft_region_scan(const ExtendedExponent& p, const ExtendedExponent& q,
                               const std::vector<double>& lambdas, const StftScanOptions& opts = {});

/// p >= q' and q >= 2.
bool stft_region_contains(const ExtendedExponent& p, const ExtendedExponent& q);

// ---- Localization-operator region (L^r boundedness for symbols in W(L^p, L^q)) ----

enum class LocopWindowKind { Bump, Gaussian };

struct LocopScanOptions {
  int L = 4;
  double margin = 0.05;
  double profile_radius = 1.0;
  LocopWindowKind windows = LocopWindowKind::Bump;
  /// Bump radius or Gaussian rate of both windows.
  double window_parameter = 1.0;
  /// Symbol amalgam exponent p (default q) and input norm exponents
  /// (s1, s2) (default (r, r)).
  std::optional<ExtendedExponent> symbol_p;
  std::optional<ExtendedExponent> s1;
  std::optional<ExtendedExponent> s2;
};

int locop_scan_resolution(double lambda, const LocopScanOptions& opts);

struct LocopScanSample {
  double lambda = 0.0;
  double output = 0.0;  // ||chi A f||_r (r replaced by r' when r < 2)
  double symbol = 0.0;  // ||a_lambda||_{W(L^p, L^q)}
  double input = 0.0;   // ||f||_{W(L^s1, L^s2)}
  double ratio() const { return output / (symbol * input); }
};

struct LocopScanData {
  std::vector<std::pair<ExtendedExponent, ExtendedExponent>> points;  // (q, r)
  std::vector<double> lambdas;
  std::vector<std::vector<LocopScanSample>> samples;                   // [point][lambda]
};

LocopScanData collect_locop_scan(const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
                                 const std::vector<double>& lambdas, const LocopScanOptions& opts = {});
RegionVerdict locop_verdict(const LocopScanData& data, std::size_t point, double margin);

std::vector<RegionVerdict> locop_region_scan(
    const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
    const std::vector<double>& lambdas, const LocopScanOptions& opts = {});
RegionVerdict locop_region_scan(const ExtendedExponent& q, const ExtendedExponent& r,
                                const std::vector<double>& lambdas, const LocopScanOptions& opts = {});

/// Same machinery with Gaussian windows (members of L^q and L^q' for every q).
LocopScanOptions lq_scan_options();
std::vector<RegionVerdict> locop_lq_scan(
    const std::vector<std::pair<ExtendedExponent, ExtendedExponent>>& points,
    const std::vector<double>& lambdas);
RegionVerdict locop_lq_scan(const ExtendedExponent& q, const ExtendedExponent& r,
                            const std::vector<double>& lambdas);

/// 1/q >= |1/r - 1/2|.
bool locop_region_contains(const ExtendedExponent& q, const ExtendedExponent& r);

/// Largest ratio R(lambda_{k+1}) / R(lambda_k) of consecutive octave samples.
double max_octave_drift(const std::vector<LocopScanSample>& samples);

/// Every (1/x, 1/y) pair of the 5 x 5 lattice, row-major in 1/x then 1/y.
std::vector<std::pair<ExtendedExponent, ExtendedExponent>> lattice_points();

// ---- Schur consistency ----

struct SchurCase {
  std::string name;
  KernelMatrix kernel;
};

struct SchurSuiteEntry {
  std::string name;
  SchurReport schur;
  double opnorm = 0.0;
  double classical_bound = 0.0;  // sqrt(c_sup_y c_sup_x)
  bool finite = false;
  bool l2_ok = false;
  /// Budget constant C * max(amalgam_a, amalgam_b, c_sup_x, c_sup_y), C = 1.
  double amalgam_budget = 0.0;
  double budget_constant = 1.0;
  /// Largest ||D_K f||_W / ||f||_W over probes and amalgam exponent pairs.
  double max_probe_ratio = 0.0;
  bool budget_ok = false;
  bool ok() const { return finite && l2_ok && budget_ok; }
};

/// Kernels from admissible data on the given grid: Gaussian symbol, a = 1 and
/// the indicator of a unit phase-space cube, all with standard Gaussian windows.
std::vector<SchurCase> default_schur_cases(const Grid1D& grid);

std::vector<SchurSuiteEntry> schur_consistency_suite(const std::vector<SchurCase>& cases,
                                                     const std::vector<SampledSignal>& probes);

}  // namespace tfsharp
