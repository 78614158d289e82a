#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lpradon/types.hpp"

namespace lpr {

enum class SplineBoundary { mirror, clamp };

/// Cardinal cubic B-spline coefficient raster aligned with a source grid.
struct SplineCoeffs {
    Array2D<double> values;
    GridSpec grid;
    SplineBoundary boundary = SplineBoundary::mirror;
};

/// Cubic B-spline basis value; support |x| < 2.
double bspline_value(double x);

/// Interpolation weights for fractional offset alpha in [0, 1): the four taps
/// pair with samples (k-1, k, k+1, k+2) around the base index k.
std::array<double, 4> bspline_weights(double alpha);

/// In-place conversion of samples to interpolating cubic spline coefficients
/// (two-pass recursive filter with pole sqrt(3) - 2).
void prefilter_1d(double* data, std::size_t n, SplineBoundary boundary = SplineBoundary::mirror);
std::vector<double> prefilter_1d(const std::vector<double>& samples,
                                 SplineBoundary boundary = SplineBoundary::mirror);

/// Separable 2-D prefilter: rows then columns.
SplineCoeffs prefilter_2d(const Array2D<double>& raster, const GridSpec& grid,
                          SplineBoundary boundary = SplineBoundary::mirror);

/// Evaluate the cubic spline at continuous grid coordinates (row, col), in
/// units of samples. Implemented as two weighted linear lookups per axis.
/// Coordinates more than 2 samples outside the grid raise std::out_of_range.
double interp_cubic_2d(const SplineCoeffs& coeffs, double row, double col);

/// Batch evaluation at (row, col) pairs.
std::vector<double> interp_cubic_2d(const SplineCoeffs& coeffs,
                                    const std::vector<std::pair<double, double>>& points);

/// Reference 16-tap tensor evaluation, used for cross-checks.
double interp_cubic_2d_taps(const SplineCoeffs& coeffs, double row, double col);

/// B_hat(k/n) = 2/3 + cos(2 pi k/n)/3 for k = 0..n-1; the DFT symbol of the
/// (1/6, 2/3, 1/6) mask. Values lie in [1/3, 1].
std::vector<double> bspline_spectrum(std::size_t n);

namespace detail {

/// One-axis periodic cubic spline evaluation on coefficient array c[0..n-1]
/// at fractional sample position t (may wrap); two weighted linear lookups.
double eval_periodic_1d(const double* c, std::size_t n, double t);

/// One-axis non-periodic evaluation with coefficients treated as zero outside
/// [0, n-1]; used by resampling legs where out-of-range reads contribute zero.
double eval_zero_1d(const double* c, std::size_t n, double t);

/// Tensor 2-D periodic evaluation on a row-major coefficient raster.
double eval_periodic_2d(const Array2D<double>& c, double t_row, double t_col);

}  // namespace detail

}  // namespace lpr
