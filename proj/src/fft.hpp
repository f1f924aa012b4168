#pragma once

#include <complex>
#include <span>

namespace tfsharp::detail {

using cplx = std::complex<double>;

/// out[k] = sum_j in[j] exp(sign * 2 pi i j k / n), sign = -1 or +1.
/// Plans are cached per thread and built with FFTW_ESTIMATE on aligned
/// buffers, so repeated calls are bit-identical.
void dft(std::span<const cplx> in, std::span<cplx> out, int sign);

/// Row-major 2-D transform of a rows x cols array.
void dft2(std::span<const cplx> in, std::span<cplx> out, int rows, int cols, int sign);

/// Transform between a centred grid and its dual:
/// out[k] = step * sum_j in[j] exp(sign 2 pi i (k - n/2)(j - n/2) / n).
/// n must be even.
void centered_dft(std::span<const cplx> in, std::span<cplx> out, double step, int sign);

}  // namespace tfsharp::detail
