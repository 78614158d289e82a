#pragma once

#include <cmath>
#include <random>

#include "lpradon/types.hpp"

namespace lpr::test {

inline double rel_l2(const Array2D<double>& a, const Array2D<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.storage()[i] - b.storage()[i];
        num += d * d;
        den += b.storage()[i] * b.storage()[i];
    }
    return std::sqrt(num / den);
}

/// Relative l2 over entries where mask is nonzero.
inline double rel_l2_masked(const Array2D<double>& a, const Array2D<double>& b,
                            const Array2D<double>& mask) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (mask.storage()[i] == 0.0) continue;
        const double d = a.storage()[i] - b.storage()[i];
        num += d * d;
        den += b.storage()[i] * b.storage()[i];
    }
    return std::sqrt(num / den);
}

inline double max_abs_diff(const Array2D<double>& a, const Array2D<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.storage()[i] - b.storage()[i]));
    return m;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(eng_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Gaussian-blurred noise supported in |x_phys| <= support_radius (physical
/// radius-1 units, i.e. raster radius support_radius/2), normalized to max 1.
inline Array2D<double> smooth_disc_image(int N, double support_radius, std::uint64_t seed,
                                         double blur_sigma_pixels = 3.0) {
    Rng rng(seed);
    Array2D<double> img(N, N);
    for (std::size_t i = 0; i < img.size(); ++i) img.storage()[i] = rng.normal();

    // Separable Gaussian blur, zero boundary.
    const int half = int(std::ceil(3 * blur_sigma_pixels));
    std::vector<double> k(2 * half + 1);
    double ksum = 0.0;
    for (int t = -half; t <= half; ++t) {
        k[t + half] = std::exp(-0.5 * t * t / (blur_sigma_pixels * blur_sigma_pixels));
        ksum += k[t + half];
    }
    for (double& v : k) v /= ksum;
    Array2D<double> tmp(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            double acc = 0.0;
            for (int t = -half; t <= half; ++t) {
                const int cc = c + t;
                if (cc >= 0 && cc < N) acc += k[t + half] * img(r, cc);
            }
            tmp(r, c) = acc;
        }
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            double acc = 0.0;
            for (int t = -half; t <= half; ++t) {
                const int rr = r + t;
                if (rr >= 0 && rr < N) acc += k[t + half] * tmp(rr, c);
            }
            img(r, c) = acc;
        }

    // Smooth taper to zero at the physical support radius.
    const double r_raster = support_radius / 2.0;
    double vmax = 0.0;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            const double x = (c - N / 2) / double(N);
            const double y = (r - N / 2) / double(N);
            const double rad = std::sqrt(x * x + y * y);
            const double edge = 0.85 * r_raster;
            double w = 0.0;
            if (rad < edge) {
                w = 1.0;
            } else if (rad < r_raster) {
                const double t = (rad - edge) / (r_raster - edge);
                w = 0.5 * (1.0 + std::cos(t * 3.14159265358979323846));
            }
            img(r, c) *= w;
            vmax = std::max(vmax, std::abs(img(r, c)));
        }
    if (vmax > 0)
        for (double& v : img.storage()) v /= vmax;
    return img;
}

}  // namespace lpr::test
