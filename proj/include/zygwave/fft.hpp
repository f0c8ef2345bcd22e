#pragma once

// Thin FFTW facade. Plans are cached per (n, dim, direction) and shared;
// fftw_execute_dft on caller-owned buffers is thread safe, so concurrent
// transforms of distinct arrays are fine. FFTW_ESTIMATE keeps planning
// deterministic run to run.
//
// Conventions (period 2*pi per axis, x_m = 2*pi*m/n):
//   analysis  : uhat(k) = (1/n^dim) * sum_m u(x_m) e^{-i k.x_m}
//   synthesis : u(x_m)  = sum_k uhat(k) e^{+i k.x_m}
// Frequencies are stored in FFTW order: index m holds k = m for m < n/2,
// k = m - n otherwise.

#include <cstddef>

#include "zygwave/common.hpp"

namespace zyg {

// out = analysis of in; in/out may alias. size = n^dim entries.
void fft_analyze(int n, int dim, const cplx* in, cplx* out);

// out = synthesis of in; in/out may alias.
void fft_synthesize(int n, int dim, const cplx* in, cplx* out);

// Batched 1-D transforms down the columns of a column-contiguous matrix
// (ncols columns of length n each). Used for per-column symbol smoothing.
void fft_analyze_many(int n, std::size_t ncols, cplx* data);
void fft_synthesize_many(int n, std::size_t ncols, cplx* data);

}  // namespace zyg
