#include "tfsharp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tfsharp/families.hpp"
#include "tfsharp/transforms.hpp"

namespace tfsharp {

namespace {

// Accumulates |v|^p in index order; max for p = inf.
class PowerSum {
 public:
  explicit PowerSum(const ExtendedExponent& p) : p_(p), inf_(p.is_infinite()), pv_(inf_ ? 0.0 : p.value()) {}

  void add(double a) {
    if (inf_) {
      acc_ = std::max(acc_, a);
    } else if (pv_ == 1.0) {
      acc_ += a;
    } else if (pv_ == 2.0) {
      acc_ += a * a;
    } else if (a != 0.0) {
      acc_ += std::pow(a, pv_);
    }
  }

  double finish(double weight) const {
    if (inf_) return acc_;
    if (pv_ == 1.0) return weight * acc_;
    if (pv_ == 2.0) return std::sqrt(weight * acc_);
    return std::pow(weight * acc_, 1.0 / pv_);
  }

 private:
  ExtendedExponent p_;
  bool inf_;
  double pv_;
  double acc_ = 0.0;
};

int rows_per_x_cube(const SampledSymbol& F) {
  if (F.x_grid.m() % F.x_stride != 0) {
    throw std::invalid_argument("symbol x-stride must divide m for cube norms");
  }
  return F.x_grid.m() / F.x_stride;
}

}  // namespace

double lp_norm(const SampledSignal& f, const ExtendedExponent& p) {
  PowerSum s(p);
  for (const cplx& v : f.samples) s.add(std::abs(v));
  return s.finish(f.grid.step());
}

double lp_norm(const SampledSymbol& F, const ExtendedExponent& p) {
  PowerSum s(p);
  for (const cplx& v : F.samples) s.add(std::abs(v));
  return s.finish(F.cell_area());
}

double mixed_lpq(const SampledSymbol& F, const ExtendedExponent& p, const ExtendedExponent& q) {
  const double wx = F.x_grid.step() * F.x_stride;
  const double ww = F.x_grid.freq_step();
  PowerSum outer(q);
  for (int c = 0; c < F.cols(); ++c) {
    PowerSum inner(p);
    for (int r = 0; r < F.rows(); ++r) inner.add(std::abs(F.at(r, c)));
    outer.add(inner.finish(wx));
  }
  return outer.finish(ww);
}

double mixed_lplq(const SampledSymbol& F, const ExtendedExponent& p, const ExtendedExponent& q) {
  const double wx = F.x_grid.step() * F.x_stride;
  const double ww = F.x_grid.freq_step();
  PowerSum outer(p);
  for (int r = 0; r < F.rows(); ++r) {
    PowerSum inner(q);
    for (int c = 0; c < F.cols(); ++c) inner.add(std::abs(F.at(r, c)));
    outer.add(inner.finish(ww));
  }
  return outer.finish(wx);
}

std::vector<double> cube_local_norms(const SampledSignal& f, const ExtendedExponent& p) {
  const int m = f.grid.m();
  std::vector<double> out(f.grid.L());
  for (int n = 0; n < f.grid.L(); ++n) {
    PowerSum s(p);
    for (int j = n * m; j < (n + 1) * m; ++j) s.add(std::abs(f.samples[j]));
    out[n] = s.finish(f.grid.step());
  }
  return out;
}

std::vector<double> cube_local_norms(const SampledSymbol& F, const ExtendedExponent& p) {
  const int bx = rows_per_x_cube(F);
  const int bw = F.x_grid.L();
  const int nx = F.rows() / bx;
  const int nw = F.cols() / bw;
  const double cell = F.cell_area();
  std::vector<double> out(static_cast<std::size_t>(nx) * nw);
  std::vector<PowerSum> sums;
  for (int i = 0; i < nx; ++i) {
    sums.assign(nw, PowerSum(p));
    for (int r = i * bx; r < (i + 1) * bx; ++r) {
      const auto row = F.row(r);
      for (int k = 0; k < nw; ++k) {
        PowerSum& s = sums[k];
        for (int c = k * bw; c < (k + 1) * bw; ++c) s.add(std::abs(row[c]));
      }
    }
    for (int k = 0; k < nw; ++k) out[static_cast<std::size_t>(i) * nw + k] = sums[k].finish(cell);
  }
  return out;
}

double lq_combine(std::span<const double> local, const ExtendedExponent& q) {
  PowerSum s(q);
  for (double v : local) s.add(v);
  return s.finish(1.0);
}

double amalgam_norm(const SampledSignal& f, const ExtendedExponent& p, const ExtendedExponent& q) {
  return lq_combine(cube_local_norms(f, p), q);
}

double amalgam_norm(const SampledSymbol& F, const ExtendedExponent& p, const ExtendedExponent& q) {
  return lq_combine(cube_local_norms(F, p), q);
}

double amalgam_profile(std::span<const double> values, int per_cube, double weight,
                       const ExtendedExponent& p, const ExtendedExponent& q) {
  if (per_cube <= 0 || values.size() % static_cast<std::size_t>(per_cube) != 0) {
    throw std::invalid_argument("amalgam_profile: length must be a multiple of the cube size");
  }
  const std::size_t cubes = values.size() / per_cube;
  PowerSum outer(q);
  for (std::size_t n = 0; n < cubes; ++n) {
    PowerSum inner(p);
    for (std::size_t j = n * per_cube; j < (n + 1) * per_cube; ++j) inner.add(std::abs(values[j]));
    outer.add(inner.finish(weight));
  }
  return outer.finish(1.0);
}

double flp_norm(const SampledSignal& f, const ExtendedExponent& p) {
  return lp_norm(inverse_fourier(f), p);
}

double modulation_norm(const SampledSignal& f, const ExtendedExponent& p, const ExtendedExponent& q) {
  const SampledSignal phi = sample(gaussian_family(1.0), f.grid);
  return mixed_lpq(stft(f, phi), p, q);
}

double triebel_profile(double omega) {
  auto b = [](double w) { return std::abs(w) < 1.0 ? std::exp(-1.0 / (1.0 - w * w)) : 0.0; };
  if (std::abs(omega) >= 1.0) return 0.0;
  // Only the translates k = -1, 0, 1 overlap (-1, 1).
  return b(omega) / (b(omega - 1.0) + b(omega) + b(omega + 1.0));
}

std::vector<double> triebel_terms(const SampledSignal& f, const ExtendedExponent& p) {
  const SampledSignal spectrum = fourier(f);
  const Grid1D& fg = spectrum.grid;
  const int kmax = f.grid.m() / 2 + 1;
  std::vector<double> out;
  out.reserve(2 * kmax + 1);
  SampledSignal piece(fg);
  for (int k = -kmax; k <= kmax; ++k) {
    bool any = false;
    for (int j = 0; j < fg.N(); ++j) {
      const double w = triebel_profile(fg.point(j) - k);
      piece.samples[j] = spectrum.samples[j] * w;
      any = any || (w != 0.0 && spectrum.samples[j] != cplx{});
    }
    out.push_back(any ? lp_norm(inverse_fourier(piece), p) : 0.0);
  }
  return out;
}

double modulation_norm_triebel(const SampledSignal& f, const ExtendedExponent& p,
                               const ExtendedExponent& q) {
  return lq_combine(triebel_terms(f, p), q);
}

double symbol_mixed_norm(const SampledSymbol& a, const ExtendedExponent& p1,
                         const ExtendedExponent& q1, const ExtendedExponent& p2,
                         const ExtendedExponent& q2) {
  const Grid1D freq = a.x_grid.dual();
  std::vector<double> profile(a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    const SampledSignal slice(freq, std::vector<cplx>(row.begin(), row.end()));
    profile[r] = amalgam_norm(inverse_fourier(slice), p2, q2);
  }
  return amalgam_profile(profile, rows_per_x_cube(a), a.x_grid.step() * a.x_stride, p1, q1);
}

NormKind parse_norm_kind(std::string_view name) {
  if (name == "lp") return NormKind::Lp;
  if (name == "mixed-lpq") return NormKind::MixedLpq;
  if (name == "mixed-lplq") return NormKind::MixedLpLq;
  if (name == "amalgam") return NormKind::Amalgam;
  if (name == "flp") return NormKind::FLp;
  if (name == "modulation") return NormKind::ModulationSTFT;
  if (name == "modulation-triebel") return NormKind::ModulationTriebel;
  if (name == "symbol-mixed") return NormKind::SymbolMixed;
  throw std::invalid_argument("unknown norm kind '" + std::string(name) + "'");
}

std::string_view norm_kind_name(NormKind kind) {
  switch (kind) {
    case NormKind::Lp: return "lp";
    case NormKind::MixedLpq: return "mixed-lpq";
    case NormKind::MixedLpLq: return "mixed-lplq";
    case NormKind::Amalgam: return "amalgam";
    case NormKind::FLp: return "flp";
    case NormKind::ModulationSTFT: return "modulation";
    case NormKind::ModulationTriebel: return "modulation-triebel";
    case NormKind::SymbolMixed: return "symbol-mixed";
  }
  return "";
}

std::size_t norm_arity(NormKind kind) {
  switch (kind) {
    case NormKind::Lp:
    case NormKind::FLp: return 1;
    case NormKind::SymbolMixed: return 4;
    default: return 2;
  }
}

NormSpec::NormSpec(NormKind k, std::vector<ExtendedExponent> e) : kind(k), exponents(std::move(e)) {
  if (exponents.size() != norm_arity(kind)) {
    throw std::invalid_argument("norm '" + std::string(norm_kind_name(kind)) + "' takes " +
                                std::to_string(norm_arity(kind)) + " exponent(s), got " +
                                std::to_string(exponents.size()));
  }
}

bool NormSpec::applies_to_signal() const {
  switch (kind) {
    case NormKind::Lp:
    case NormKind::Amalgam:
    case NormKind::FLp:
    case NormKind::ModulationSTFT:
    case NormKind::ModulationTriebel: return true;
    default: return false;
  }
}

double NormSpec::evaluate(const SampledSignal& f) const {
  const auto& e = exponents;
  switch (kind) {
    case NormKind::Lp: return lp_norm(f, e[0]);
    case NormKind::Amalgam: return amalgam_norm(f, e[0], e[1]);
    case NormKind::FLp: return flp_norm(f, e[0]);
    case NormKind::ModulationSTFT: return modulation_norm(f, e[0], e[1]);
    case NormKind::ModulationTriebel: return modulation_norm_triebel(f, e[0], e[1]);
    default:
      throw std::invalid_argument("norm '" + std::string(norm_kind_name(kind)) +
                                  "' needs a phase-space symbol");
  }
}

double NormSpec::evaluate(const SampledSymbol& F) const {
  const auto& e = exponents;
  switch (kind) {
    case NormKind::Lp: return lp_norm(F, e[0]);
    case NormKind::MixedLpq: return mixed_lpq(F, e[0], e[1]);
    case NormKind::MixedLpLq: return mixed_lplq(F, e[0], e[1]);
    case NormKind::Amalgam: return amalgam_norm(F, e[0], e[1]);
    case NormKind::SymbolMixed: return symbol_mixed_norm(F, e[0], e[1], e[2], e[3]);
    default:
      throw std::invalid_argument("norm '" + std::string(norm_kind_name(kind)) + "' needs a signal");
  }
}

}  // namespace tfsharp
