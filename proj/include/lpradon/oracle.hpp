#pragma once

#include <cstdint>
#include <vector>

#include "lpradon/types.hpp"

namespace lpr {

/// One ellipse of a piecewise-constant phantom, in raster coordinates
/// (image support is the disc of radius 1/2).
struct EllipseSpec {
    double amplitude = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double a = 0.0;        ///< semi-axis along the rotated x direction
    double b = 0.0;        ///< semi-axis along the rotated y direction
    double rotation = 0.0; ///< radians, counterclockwise
};

/// The standard ten-ellipse modified Shepp-Logan table (unit-square
/// convention scaled by 1/2 into raster coordinates).
std::vector<EllipseSpec> shepp_logan_ellipses();

/// Rasterize a phantom by point-sampling ellipse indicators at pixel centers.
Image rasterize_ellipses(const std::vector<EllipseSpec>& ellipses, int N);

/// Modified Shepp-Logan head phantom on the N x N raster.
Image phantom_image(int N);

/// Exact line integrals of an ellipse list on the given polar grid:
/// the transform of one ellipse is 2 A a b sqrt(w^2 - (s - c.theta)^2) / w^2
/// with w^2 = a^2 cos^2(theta - phi) + b^2 sin^2(theta - phi).
Sinogram phantom_sinogram(const std::vector<EllipseSpec>& ellipses, const GridSpec& grid);

/// Brute-force line integrals: bilinear image samples along each line at
/// spacing 1/(2N), summed with the trapezoid rule.
Sinogram direct_radon(const Image& image, const GridSpec& grid);

/// Brute-force adjoint: for each pixel, 2 * sum_theta g(theta, x.theta) dtheta
/// with linear interpolation in s (half-circle data weighted by 2).
Image direct_backprojection(const Sinogram& sino);

/// Per-bin Poisson resampling at the given expected count for the maximum
/// bin. Deterministic: the per-bin stream is derived from (seed, bin index)
/// only, so equal inputs give byte-identical outputs.
Sinogram add_poisson_noise(const Sinogram& sino, double dose,
                           std::uint64_t seed = 0x10f2a5eedULL);

}  // namespace lpr
