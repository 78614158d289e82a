#include "lpradon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace lpr {

namespace {

constexpr double kPi = 3.14159265358979323846;

GridSpec raster_grid(int N) {
    GridSpec g;
    g.kind = GridKind::cartesian;
    g.axis0 = {std::size_t(N), -0.5, 1.0 / double(N)};
    g.axis1 = {std::size_t(N), -0.5, 1.0 / double(N)};
    return g;
}

// Bilinear image sample with zero extension outside the raster.
double sample_bilinear(const Image& img, double x, double y) {
    const auto& g = img.grid;
    const double fr = (y - g.axis0.origin) / g.axis0.spacing;
    const double fc = (x - g.axis1.origin) / g.axis1.spacing;
    const long r0 = (long)std::floor(fr);
    const long c0 = (long)std::floor(fc);
    const double wr = fr - double(r0);
    const double wc = fc - double(c0);
    const long rows = (long)img.pixels.rows();
    const long cols = (long)img.pixels.cols();
    auto at = [&](long r, long c) -> double {
        if (r < 0 || r >= rows || c < 0 || c >= cols) return 0.0;
        return img.pixels((std::size_t)r, (std::size_t)c);
    };
    return (1.0 - wr) * ((1.0 - wc) * at(r0, c0) + wc * at(r0, c0 + 1)) +
           wr * ((1.0 - wc) * at(r0 + 1, c0) + wc * at(r0 + 1, c0 + 1));
}

// splitmix64: the per-bin uniform stream for the noise sampler.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double next_uniform(std::uint64_t& state) {
    // in (0, 1]: the log() calls below must never see 0.
    return double((splitmix64(state) >> 11) + 1) * 0x1.0p-53;
}

// Inverse-CDF walk, adequate for small means.
long poisson_small(double lam, std::uint64_t& state) {
    const double u = next_uniform(state);
    double p = std::exp(-lam);
    double cdf = p;
    long k = 0;
    while (u > cdf && k < 1000) {
        ++k;
        p *= lam / double(k);
        cdf += p;
    }
    return k;
}

// Transformed-rejection sampler for lam >= 10 (Hormann's PTRS).
long poisson_ptrs(double lam, std::uint64_t& state) {
    const double slam = std::sqrt(lam);
    const double loglam = std::log(lam);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = next_uniform(state) - 0.5;
        const double v = next_uniform(state);
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lam + 0.43);
        if (us >= 0.07 && v <= vr) return (long)kf;
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = kf * loglam - lam - std::lgamma(kf + 1.0);
        if (lhs <= rhs) return (long)kf;
    }
}

long poisson_sample(double lam, std::uint64_t& state) {
    return lam < 10.0 ? poisson_small(lam, state) : poisson_ptrs(lam, state);
}

}  // namespace

std::vector<EllipseSpec> shepp_logan_ellipses() {
    // Modified Shepp-Logan table (Toft's appendix values, the variant used by
    // the common phantom generators), stated for the [-1,1]^2 square and
    // scaled by 1/2 into raster coordinates. Columns: amplitude, center,
    // semi-axes, rotation in degrees.
    struct Row {
        double A, x0, y0, a, b, deg;
    };
    static const Row rows[10] = {
        {1.0, 0.0, 0.0, 0.69, 0.92, 0.0},
        {-0.8, 0.0, -0.0184, 0.6624, 0.874, 0.0},
        {-0.2, 0.22, 0.0, 0.11, 0.31, -18.0},
        {-0.2, -0.22, 0.0, 0.16, 0.41, 18.0},
        {0.1, 0.0, 0.35, 0.21, 0.25, 0.0},
        {0.1, 0.0, 0.1, 0.046, 0.046, 0.0},
        {0.1, 0.0, -0.1, 0.046, 0.046, 0.0},
        {0.1, -0.08, -0.605, 0.046, 0.023, 0.0},
        {0.1, 0.0, -0.605, 0.023, 0.023, 0.0},
        {0.1, 0.06, -0.605, 0.023, 0.046, 0.0},
    };
    std::vector<EllipseSpec> out;
    out.reserve(10);
    for (const Row& r : rows) {
        EllipseSpec e;
        e.amplitude = r.A;
        e.cx = 0.5 * r.x0;
        e.cy = 0.5 * r.y0;
        e.a = 0.5 * r.a;
        e.b = 0.5 * r.b;
        e.rotation = r.deg * kPi / 180.0;
        out.push_back(e);
    }
    return out;
}

Image rasterize_ellipses(const std::vector<EllipseSpec>& ellipses, int N) {
    require(N >= 16, "rasterize_ellipses: N must be >= 16");
    Image img;
    img.grid = raster_grid(N);
    img.pixels = Array2D<double>(std::size_t(N), std::size_t(N), 0.0);
    for (int r = 0; r < N; ++r) {
        const double y = img.grid.coord0(std::size_t(r));
        for (int c = 0; c < N; ++c) {
            const double x = img.grid.coord1(std::size_t(c));
            double v = 0.0;
            for (const EllipseSpec& e : ellipses) {
                const double dx = x - e.cx;
                const double dy = y - e.cy;
                const double co = std::cos(e.rotation);
                const double si = std::sin(e.rotation);
                const double u = co * dx + si * dy;
                const double w = -si * dx + co * dy;
                if ((u / e.a) * (u / e.a) + (w / e.b) * (w / e.b) <= 1.0) {
                    v += e.amplitude;
                }
            }
            img.pixels(std::size_t(r), std::size_t(c)) = v;
        }
    }
    return img;
}

Image phantom_image(int N) {
    Image img = rasterize_ellipses(shepp_logan_ellipses(), N);
    // every amplitude in the table is an exact tenth, so each pixel's true
    // value is one too; undo the accumulation-order rounding noise
    for (double& v : img.pixels.storage()) v = std::round(v * 10.0) / 10.0;
    return img;
}

Sinogram phantom_sinogram(const std::vector<EllipseSpec>& ellipses, const GridSpec& grid) {
    Sinogram sino;
    sino.grid = grid;
    sino.values = Array2D<double>(grid.rows(), grid.cols(), 0.0);
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        const double theta = grid.coord0(i);
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const double s = grid.coord1(j);
            double v = 0.0;
            for (const EllipseSpec& e : ellipses) {
                const double sp = s - (e.cx * ct + e.cy * st);
                const double phi = theta - e.rotation;
                const double cp = std::cos(phi);
                const double spin = std::sin(phi);
                const double w2 = e.a * e.a * cp * cp + e.b * e.b * spin * spin;
                const double rad = w2 - sp * sp;
                if (rad > 0.0) {
                    v += 2.0 * e.amplitude * e.a * e.b * std::sqrt(rad) / w2;
                }
            }
            sino.values(i, j) = v;
        }
    }
    return sino;
}

Sinogram direct_radon(const Image& image, const GridSpec& grid) {
    const int N = int(image.pixels.rows());
    require(N >= 2 && image.pixels.cols() == std::size_t(N),
            "direct_radon: image must be square");
    Sinogram sino;
    sino.grid = grid;
    sino.values = Array2D<double>(grid.rows(), grid.cols(), 0.0);

    // The raster support has radius <= sqrt(2)/2 < 0.75; steps of 1/(2N) over
    // |t| <= 0.75 cover every chord with endpoints in the zero exterior.
    const double h = 1.0 / (2.0 * double(N));
    const long K = 3L * N;  // 2 * 0.75 / h

#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(grid.rows()); ++i) {
        const double theta = grid.coord0(std::size_t(i));
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const double s = grid.coord1(j);
            double acc = 0.0;
            for (long k = 0; k <= K; ++k) {
                const double t = -0.75 + double(k) * h;
                const double x = s * ct - t * st;
                const double y = s * st + t * ct;
                const double f = sample_bilinear(image, x, y);
                acc += (k == 0 || k == K) ? 0.5 * f : f;
            }
            sino.values(std::size_t(i), j) = acc * h;
        }
    }
    return sino;
}

Image direct_backprojection(const Sinogram& sino) {
    const std::size_t n_theta = sino.values.rows();
    const std::size_t n_s = sino.values.cols();
    require(n_theta >= 1 && n_s >= 2, "direct_backprojection: empty sinogram");
    const int N = int(n_s);
    const double dtheta = sino.grid.axis0.spacing;

    Image img;
    img.grid = raster_grid(N);
    img.pixels = Array2D<double>(std::size_t(N), std::size_t(N), 0.0);

#pragma omp parallel for schedule(static)
    for (long r = 0; r < N; ++r) {
        const double y = img.grid.coord0(std::size_t(r));
        for (int c = 0; c < N; ++c) {
            const double x = img.grid.coord1(std::size_t(c));
            double acc = 0.0;
            for (std::size_t i = 0; i < n_theta; ++i) {
                const double theta = sino.grid.coord0(i);
                const double s = x * std::cos(theta) + y * std::sin(theta);
                const double fj = (s - sino.grid.axis1.origin) / sino.grid.axis1.spacing;
                const long j0 = (long)std::floor(fj);
                const double w = fj - double(j0);
                double v = 0.0;
                if (j0 >= 0 && j0 + 1 < long(n_s)) {
                    v = (1.0 - w) * sino.values(i, std::size_t(j0)) +
                        w * sino.values(i, std::size_t(j0 + 1));
                } else if (j0 == -1) {
                    v = w * sino.values(i, 0);
                } else if (j0 == long(n_s) - 1) {
                    v = (1.0 - w) * sino.values(i, n_s - 1);
                }
                acc += v;
            }
            img.pixels(std::size_t(r), std::size_t(c)) = 2.0 * dtheta * acc;
        }
    }
    return img;
}

Sinogram add_poisson_noise(const Sinogram& sino, double dose, std::uint64_t seed) {
    require(dose > 0.0, "add_poisson_noise: dose must be positive");
    double maxval = 0.0;
    for (const double v : sino.values.storage()) {
        require(v >= 0.0, "add_poisson_noise: sinogram must be nonnegative");
        maxval = std::max(maxval, v);
    }
    Sinogram out;
    out.grid = sino.grid;
    out.values = Array2D<double>(sino.values.rows(), sino.values.cols(), 0.0);
    if (maxval == 0.0) return out;

    const double scale = maxval / dose;
    for (std::size_t idx = 0; idx < sino.values.size(); ++idx) {
        const double v = sino.values.storage()[idx];
        if (v <= 0.0) continue;  // zero bins stay zero
        std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * (idx + 1));
        const long k = poisson_sample(v / scale, state);
        out.values.storage()[idx] = double(k) * scale;
    }
    return out;
}

}  // namespace lpr
