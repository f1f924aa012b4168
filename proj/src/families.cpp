#include "tfsharp/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tfsharp/transforms.hpp"

namespace tfsharp {

namespace {

constexpr double kPi = std::numbers::pi;

// Radius beyond which exp(-pi a t^2) < 1e-12.
double gaussian_radius(double a) { return std::sqrt(12.0 * std::log(10.0) / (kPi * a)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

WindowSpec::WindowSpec(WindowKind kind, Evaluator eval, WindowFlags flags, double support_radius,
                       std::string description, double chirp_rate)
    : kind_(kind),
      eval_(std::move(eval)),
      flags_(flags),
      support_radius_(support_radius),
      description_(std::move(description)),
      chirp_rate_(chirp_rate) {}

WindowSpec gaussian_family(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("gaussian_family: lambda must be positive");
  }
  WindowFlags flags{false, true, true, true};
  return WindowSpec(
      WindowKind::Gaussian, [lambda](double t) { return cplx(std::exp(-kPi * lambda * t * t), 0.0); },
      flags, gaussian_radius(lambda), "gaussian(" + fmt(lambda) + ")");
}

WindowSpec chirped_gaussian(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("chirped_gaussian: a must be positive");
  }
  WindowFlags flags{false, true, b == 0.0, true};
  return WindowSpec(
      WindowKind::ChirpedGaussian,
      [a, b](double t) { return std::polar(std::exp(-kPi * a * t * t), -kPi * b * t * t); }, flags,
      gaussian_radius(a), "chirped_gaussian(" + fmt(a) + "," + fmt(b) + ")");
}

WindowSpec chirp_family(const WindowSpec& profile, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("chirp_family: lambda must be nonnegative");
  }
  WindowFlags flags = profile.flags();
  flags.nonnegative = flags.nonnegative && lambda == 0.0;
  WindowSpec::Evaluator base = [profile](double t) { return profile(t); };
  return WindowSpec(
      WindowKind::Chirp,
      [base, lambda](double t) { return base(t) * std::polar(1.0, -kPi * lambda * t * t); }, flags,
      profile.support_radius(), "chirp(" + profile.describe() + "," + fmt(lambda) + ")", lambda);
}

WindowSpec bump(double center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center)) {
    throw std::invalid_argument("bump: radius must be positive");
  }
  WindowFlags flags{true, true, true, true};
  return WindowSpec(
      WindowKind::Bump,
      [center, radius](double t) {
        const double s = (t - center) / radius;
        if (std::abs(s) >= 1.0) return cplx{};
        return cplx(std::exp(1.0 - 1.0 / (1.0 - s * s)), 0.0);
      },
      flags, std::abs(center) + radius, "bump(" + fmt(center) + "," + fmt(radius) + ")");
}

WindowSpec indicator(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("indicator: need lo < hi");
  }
  WindowFlags flags{true, lo <= 0.0 && 0.0 < hi, true, false};
  return WindowSpec(
      WindowKind::Indicator, [lo, hi](double t) { return cplx(lo <= t && t < hi ? 1.0 : 0.0, 0.0); },
      flags, std::max(std::abs(lo), std::abs(hi)), "indicator(" + fmt(lo) + "," + fmt(hi) + ")");
}

WindowSpec samples_window(const SampledSignal& s) {
  const Grid1D grid = s.grid;
  auto data = std::make_shared<std::vector<cplx>>(s.samples);
  WindowFlags flags{};
  flags.unit_at_zero = std::abs((*data)[grid.index_of(0.0)] - cplx(1.0, 0.0)) == 0.0;
  return WindowSpec(
      WindowKind::Samples,
      [grid, data](double t) {
        if (!grid.is_aligned(t)) throw std::invalid_argument("samples window: off-grid evaluation");
        return (*data)[grid.index_of(t)];
      },
      flags, 0.5 * grid.L(), "samples");
}

double max_alias_free_lambda(const Grid1D& grid, double support_radius, double margin) {
  if (!(support_radius > 0.0)) {
    throw std::invalid_argument("max_alias_free_lambda: support radius must be positive");
  }
  if (margin < 0.0) margin = grid.m() / 8.0;
  return (0.5 * grid.m() - margin) / support_radius;
}

SampledSymbol sharpness_symbol(const WindowSpec& profile, double lambda, const Grid1D& grid) {
  const double guard = max_alias_free_lambda(grid, profile.support_radius());
  if (lambda > guard) {
    throw std::invalid_argument("sharpness_symbol: lambda " + fmt(lambda) +
                                " exceeds the aliasing guard " + fmt(guard));
  }
  const SampledSignal h = sample(profile, grid);
  const SampledSignal spectrum = inverse_fourier(sample(chirp_family(profile, lambda), grid));
  SampledSymbol out(grid, 1);
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) out.at(r, c) = h.samples[r] * spectrum.samples[c];
  }
  return out;
}

Claim parse_claim(std::string_view id) {
  if (id == "chirp-FT") return Claim::ChirpFourier;
  if (id == "gaussian-amalgam") return Claim::GaussianAmalgam;
  if (id == "stft-amalgam") return Claim::StftAmalgam;
  if (id == "locop-lower") return Claim::LocopLower;
  if (id == "locop-sharpness-ratio") return Claim::LocopSharpnessRatio;
  throw std::invalid_argument("unknown claim id '" + std::string(id) + "'");
}

std::string_view claim_id(Claim c) {
  switch (c) {
    case Claim::ChirpFourier: return "chirp-FT";
    case Claim::GaussianAmalgam: return "gaussian-amalgam";
    case Claim::StftAmalgam: return "stft-amalgam";
    case Claim::LocopLower: return "locop-lower";
    case Claim::LocopSharpnessRatio: return "locop-sharpness-ratio";
  }
  return "";
}

double predicted_exponent(Claim claim, const std::vector<ExtendedExponent>& e) {
  const std::size_t arity = claim == Claim::LocopSharpnessRatio ? 2 : 1;
  if (e.size() != arity) {
    throw std::invalid_argument("predicted_exponent: claim " + std::string(claim_id(claim)) +
                                " takes " + std::to_string(arity) + " exponent(s)");
  }
  switch (claim) {
    case Claim::ChirpFourier: return e[0].reciprocal() - 0.5;
    case Claim::GaussianAmalgam: return -0.5 * e[0].reciprocal();
    case Claim::StftAmalgam: return -0.5 * e[0].conjugate_reciprocal();
    case Claim::LocopLower: return -e[0].reciprocal();
    case Claim::LocopSharpnessRatio: return 0.5 - e[0].reciprocal() - e[1].reciprocal();
  }
  return 0.0;
}

double predicted_exponent(std::string_view id, const std::vector<ExtendedExponent>& e) {
  return predicted_exponent(parse_claim(id), e);
}

std::uint64_t SeededRng::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SeededRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int SeededRng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

double SeededRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

SampledSignal random_bandlimited(const Grid1D& grid, SeededRng& rng, const BandLimitedOptions& opts) {
  if (opts.atoms <= 0 || !(opts.band_radius > 0.0)) {
    throw std::invalid_argument("random_bandlimited: need positive atom count and band radius");
  }
  // Atom with spectrum B(omega / R), built on the frequency lattice.
  const Grid1D freq = grid.dual();
  const WindowSpec spectral = bump(0.0, opts.band_radius);
  const SampledSignal atom = inverse_fourier(sample(spectral, freq));

  const int max_y = static_cast<int>(std::floor(opts.max_shift_time * grid.m()));
  const int max_k = static_cast<int>(std::floor(opts.max_shift_frequency * grid.L()));
  SampledSignal out(grid);
  for (int a = 0; a < opts.atoms; ++a) {
    const double re = rng.normal();
    const double im = rng.normal();
    const double y = static_cast<double>(rng.uniform_int(-max_y, max_y)) / grid.m();
    const double xi = static_cast<double>(rng.uniform_int(-max_k, max_k)) / grid.L();
    const SampledSignal shifted = modulate(translate(atom, y), xi);
    const cplx c(re, im);
    for (int j = 0; j < grid.N(); ++j) out.samples[j] += c * shifted.samples[j];
  }
  return out;
}

}  // namespace tfsharp
