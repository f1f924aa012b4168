#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tfsharp/exponent.hpp"
#include "tfsharp/grid.hpp"

namespace tfsharp {

/// Window used by modulation_norm; fixed so reported constants never drift.
inline constexpr std::string_view kModulationWindowId = "gaussian(1)";

/// (cell * sum |f|^p)^(1/p), cell = h for signals and h*stride/L for symbols;
/// p = inf gives max |f|.
double lp_norm(const SampledSignal& f, const ExtendedExponent& p);
double lp_norm(const SampledSymbol& F, const ExtendedExponent& p);

/// L^{p,q}: L^p in x for each omega, then L^q in omega.
double mixed_lpq(const SampledSymbol& F, const ExtendedExponent& p, const ExtendedExponent& q);
/// L^p L^q: L^q in omega for each x, then L^p in x.
double mixed_lplq(const SampledSymbol& F, const ExtendedExponent& p, const ExtendedExponent& q);

/// Local L^p norms on the unit cubes [n, n+1), in grid order (L entries).
std::vector<double> cube_local_norms(const SampledSignal& f, const ExtendedExponent& p);
/// Local L^p norms on the unit cubes of phase space, row-major over
/// (x-cube, omega-cube): L x-cubes of m/stride rows, m omega-cubes of L columns.
std::vector<double> cube_local_norms(const SampledSymbol& F, const ExtendedExponent& p);
/// l^q norm of a list of local norms, summed in order.
double lq_combine(std::span<const double> local, const ExtendedExponent& q);

/// Wiener amalgam norm with window chi_Q: local L^p on unit cubes, l^q across.
double amalgam_norm(const SampledSignal& f, const ExtendedExponent& p, const ExtendedExponent& q);
double amalgam_norm(const SampledSymbol& F, const ExtendedExponent& p, const ExtendedExponent& q);

/// Amalgam norm of a real profile sampled with `per_cube` points per unit
/// cube and quadrature weight `weight` per point.
double amalgam_profile(std::span<const double> values, int per_cube, double weight,
                       const ExtendedExponent& p, const ExtendedExponent& q);

/// ||f||_{FL^p} = ||F^-1 f||_p.
double flp_norm(const SampledSignal& f, const ExtendedExponent& p);

/// ||V_phi f||_{L^{p,q}} with phi the standard Gaussian (kModulationWindowId).
double modulation_norm(const SampledSignal& f, const ExtendedExponent& p, const ExtendedExponent& q);

/// Partition-of-unity profile psi(w) = B(w) / sum_k B(w - k),
/// B(w) = exp(-1/(1 - w^2)) on (-1, 1).
double triebel_profile(double omega);

/// (sum_k ||psi(D - k) f||_p^q)^(1/q) for integers |k| <= m/2 + 1.
double modulation_norm_triebel(const SampledSignal& f, const ExtendedExponent& p,
                               const ExtendedExponent& q);
/// The individual terms ||psi(D - k) f||_p, k = -(m/2 + 1) .. m/2 + 1.
std::vector<double> triebel_terms(const SampledSignal& f, const ExtendedExponent& p);

/// W(L^p1, L^q1) in x of x -> ||F^-1_omega a(x, .)||_{W(L^p2, L^q2)}.
double symbol_mixed_norm(const SampledSymbol& a, const ExtendedExponent& p1,
                         const ExtendedExponent& q1, const ExtendedExponent& p2,
                         const ExtendedExponent& q2);

enum class NormKind { Lp, MixedLpq, MixedLpLq, Amalgam, FLp, ModulationSTFT, ModulationTriebel, SymbolMixed };

NormKind parse_norm_kind(std::string_view name);
std::string_view norm_kind_name(NormKind kind);
/// Number of exponents the kind takes.
std::size_t norm_arity(NormKind kind);

struct NormSpec {
  NormKind kind;
  std::vector<ExtendedExponent> exponents;

  /// Throws std::invalid_argument on arity mismatch.
  NormSpec(NormKind k, std::vector<ExtendedExponent> e);

  bool applies_to_signal() const;
  double evaluate(const SampledSignal& f) const;
  double evaluate(const SampledSymbol& F) const;
};

}  // namespace tfsharp
