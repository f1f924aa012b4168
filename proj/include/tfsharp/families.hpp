#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tfsharp/exponent.hpp"
#include "tfsharp/grid.hpp"

namespace tfsharp {

enum class WindowKind { Gaussian, ChirpedGaussian, Chirp, Bump, Indicator, Samples };

struct WindowFlags {
  bool compact_support = false;
  bool unit_at_zero = false;
  bool nonnegative = false;
  bool in_m1 = false;
};

/// Analytic descriptor of a test function: evaluator plus closed-form metadata.
class WindowSpec {
 public:
  using Evaluator = std::function<cplx(double)>;

  WindowSpec(WindowKind kind, Evaluator eval, WindowFlags flags, double support_radius,
             std::string description, double chirp_rate = 0.0);

  WindowKind kind() const { return kind_; }
  cplx operator()(double t) const { return eval_(t); }
  const WindowFlags& flags() const { return flags_; }
  /// Radius of a centred ball holding the support (effective support for
  /// Gaussians, where the profile drops below 1e-12).
  double support_radius() const { return support_radius_; }
  /// lambda for chirps, 0 otherwise.
  double chirp_rate() const { return chirp_rate_; }
  const std::string& describe() const { return description_; }

 private:
  WindowKind kind_;
  Evaluator eval_;
  WindowFlags flags_;
  double support_radius_;
  std::string description_;
  double chirp_rate_;
};

/// exp(-pi lambda t^2), lambda > 0.
WindowSpec gaussian_family(double lambda);
/// exp(-pi (a + ib) t^2), a > 0.
WindowSpec chirped_gaussian(double a, double b);
/// profile(t) exp(-pi i lambda t^2).
WindowSpec chirp_family(const WindowSpec& profile, double lambda);
/// exp(1 - 1/(1 - ((t-c)/rho)^2)) on |t - c| < rho, 0 outside.
WindowSpec bump(double center = 0.0, double radius = 1.0);
/// Characteristic function of [lo, hi).
WindowSpec indicator(double lo, double hi);
/// Grid samples wrapped as a window; evaluation only at grid points.
WindowSpec samples_window(const SampledSignal& s);

/// Canonical C_0^inf profile used by the sharpness experiments: bump(0, 1).
inline WindowSpec canonical_bump() { return bump(0.0, 1.0); }

/// Largest chirp rate whose instantaneous frequency lambda*|t| stays below
/// Nyquist minus a margin on [-rho, rho]. margin < 0 selects the default m/8.
double max_alias_free_lambda(const Grid1D& grid, double support_radius, double margin = -1.0);

/// a_lambda(x, omega) = h(x) (F^-1 h_lambda)(omega) on the full phase-space grid.
SampledSymbol sharpness_symbol(const WindowSpec& profile, double lambda, const Grid1D& grid);

/// Scaling claims with closed-form exponents (d = 1).
enum class Claim {
  ChirpFourier,           // ||F h_lambda||_q ~ lambda^(1/q - 1/2)
  GaussianAmalgam,        // ||phi_lambda||_W(L^p,L^q) ~ lambda^(-1/(2p))
  StftAmalgam,            // ||V_phi phi_lambda||_W(L^p,L^q) ~ lambda^(-1/(2q'))
  LocopLower,             // ||chi A_{a_lambda} f||_r >~ lambda^(-1/r)
  LocopSharpnessRatio,    // 1/2 - 1/q - 1/r
};

Claim parse_claim(std::string_view id);
std::string_view claim_id(Claim c);

/// Exponent predicted for a claim. Arguments: ChirpFourier(q), GaussianAmalgam(p),
/// StftAmalgam(q), LocopLower(r), LocopSharpnessRatio(q, r).
double predicted_exponent(Claim claim, const std::vector<ExtendedExponent>& exponents);
double predicted_exponent(std::string_view claim_id, const std::vector<ExtendedExponent>& exponents);

/// Deterministic 64-bit generator (splitmix64) with a platform-independent
/// uniform draw, so seeded trials reproduce across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);        // inclusive
  double normal();

 private:
  std::uint64_t state_;
};

struct BandLimitedOptions {
  int atoms = 4;
  /// Half-width of each atom's spectral support.
  double band_radius = 2.0;
  /// Atoms are modulated by lattice frequencies |xi| <= max_shift_frequency.
  double max_shift_frequency = 2.0;
  /// Atoms are translated by lattice points |y| <= max_shift_time.
  double max_shift_time = 2.0;
};

/// Random band-limited, well-localised signal: a sum of time-frequency shifted
/// atoms whose Fourier transforms are bumps of radius band_radius.
SampledSignal random_bandlimited(const Grid1D& grid, SeededRng& rng,
                                 const BandLimitedOptions& opts = {});

}  // namespace tfsharp
