#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace tfsharp::detail {

/// exp(2 pi i n / period) with n reduced modulo period first, so phases of
/// lattice products carry no growth in argument error.
inline std::complex<double> unit_phase(long long n, long long period) {
  n %= period;
  if (n < 0) n += period;
  if (n == 0) return {1.0, 0.0};
  if (2 * n == period) return {-1.0, 0.0};
  if (4 * n == period) return {0.0, 1.0};
  if (4 * n == 3 * period) return {0.0, -1.0};
  const double arg = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(period);
  return {std::cos(arg), std::sin(arg)};
}

}  // namespace tfsharp::detail
