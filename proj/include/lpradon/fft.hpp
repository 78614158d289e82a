#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace lpr::fft {

inline constexpr int forward = -1;
inline constexpr int backward = +1;

/// In-place unnormalized 2-D complex DFT over a row-major rows x cols buffer.
void c2c_2d(std::complex<double>* data, std::size_t rows, std::size_t cols, int sign);

/// In-place unnormalized 1-D complex DFT.
void c2c_1d(std::complex<double>* data, std::size_t n, int sign);

/// Number of 2-D transforms executed since the last reset.
std::uint64_t transform_count_2d();
void reset_transform_count_2d();

}  // namespace lpr::fft
