#pragma once

#include <span>

#include "vws/grid.hpp"

// Raw FFTW transforms over a GridSpec. Plans are cached per shape and the
// execute calls are safe from concurrent threads.
namespace vws::fft {

// out_k = sum_j in_j exp(-2 pi i j.k / M)
void forward(const GridSpec& g, std::span<const cplx> in, std::span<cplx> out);
// out_j = sum_k in_k exp(+2 pi i j.k / M)
void backward(const GridSpec& g, std::span<const cplx> in, std::span<cplx> out);

}  // namespace vws::fft
