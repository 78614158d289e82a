#include "lpradon/bspline.hpp"

#include <cmath>

namespace lpr {

namespace {

constexpr double kPole = -0.26794919243112270647;  // sqrt(3) - 2
constexpr int kMargin = 32;                        // |pole|^32 ~ 5e-19

// Mirror reflection of index i into [0, n-1] (reflect about end samples).
std::size_t reflect_index(long i, long n) {
    if (n == 1) return 0;
    const long period = 2 * (n - 1);
    long r = i % period;
    if (r < 0) r += period;
    if (r >= n) r = period - r;
    return std::size_t(r);
}

long clamp_index(long i, long n) {
    if (i < 0) return 0;
    if (i >= n) return n - 1;
    return i;
}

double boundary_fetch(const double* c, long n, long i, SplineBoundary b) {
    if (i >= 0 && i < n) return c[i];
    return b == SplineBoundary::mirror ? c[reflect_index(i, n)] : c[clamp_index(i, n)];
}

// One-axis evaluation with a caller-supplied tap fetch.
template <typename Fetch>
double eval_axis(double t, Fetch&& fetch) {
    const double kf = std::floor(t);
    const long k = long(kf);
    const auto w = bspline_weights(t - kf);
    // Taps (k-1, k, k+1, k+2) carry weights (w3, w2, w1, w0); fold each pair
    // into one linear lookup.
    const double pl = w[3] + w[2];
    const double pr = w[1] + w[0];
    double left;
    if (pl > 0) {
        const double u = w[2] / pl;
        left = pl * ((1.0 - u) * fetch(k - 1) + u * fetch(k));
    } else {
        left = 0.0;
    }
    double right;
    if (pr > 0) {
        const double u = w[0] / pr;
        right = pr * ((1.0 - u) * fetch(k + 1) + u * fetch(k + 2));
    } else {
        right = 0.0;
    }
    return left + right;
}

}  // namespace

double bspline_value(double x) {
    x = std::abs(x);
    if (x < 1.0) return (3.0 * x * x * x - 6.0 * x * x + 4.0) / 6.0;
    if (x < 2.0) {
        const double t = 2.0 - x;
        return t * t * t / 6.0;
    }
    return 0.0;
}

std::array<double, 4> bspline_weights(double alpha) {
    const double a3 = alpha * alpha * alpha;
    const double b = 1.0 - alpha;
    const double b3 = b * b * b;
    // (B(alpha-2), B(alpha-1), B(alpha), B(alpha+1))
    return {a3 / 6.0,
            (3.0 * b3 - 6.0 * b * b + 4.0) / 6.0,
            (3.0 * a3 - 6.0 * alpha * alpha + 4.0) / 6.0,
            b3 / 6.0};
}

void prefilter_1d(double* data, std::size_t n, SplineBoundary boundary) {
    require(n >= 4, "prefilter_1d: length must be >= 4");
    const long nn = long(n);
    std::vector<double> ext(n + 2 * kMargin);
    for (long i = 0; i < long(ext.size()); ++i) {
        const long src = i - kMargin;
        ext[i] = boundary_fetch(data, nn, src, boundary);
    }
    // Causal pass: c+(k) = 6 f(k) + z1 c+(k-1), steady-state start.
    const double z1 = kPole;
    double cp = 6.0 * ext[0] / (1.0 - z1);
    ext[0] = cp;
    for (std::size_t k = 1; k < ext.size(); ++k) {
        cp = 6.0 * ext[k] + z1 * cp;
        ext[k] = cp;
    }
    // Anticausal pass: c(k) = z1 (c(k+1) - c+(k)), steady-state start.
    double cm = -z1 / (1.0 - z1) * ext.back();
    ext.back() = cm;
    for (long k = long(ext.size()) - 2; k >= 0; --k) {
        cm = z1 * (cm - ext[k]);
        ext[k] = cm;
    }
    for (std::size_t k = 0; k < n; ++k) data[k] = ext[k + kMargin];
}

std::vector<double> prefilter_1d(const std::vector<double>& samples, SplineBoundary boundary) {
    std::vector<double> out = samples;
    prefilter_1d(out.data(), out.size(), boundary);
    return out;
}

SplineCoeffs prefilter_2d(const Array2D<double>& raster, const GridSpec& grid,
                          SplineBoundary boundary) {
    require(raster.rows() >= 4 && raster.cols() >= 4, "prefilter_2d: both dims must be >= 4");
    SplineCoeffs out{raster, grid, boundary};
    auto& v = out.values;
#pragma omp parallel for schedule(static)
    for (long r = 0; r < long(v.rows()); ++r) prefilter_1d(v.row(r), v.cols(), boundary);
    std::vector<double> col(v.rows());
#pragma omp parallel for schedule(static) firstprivate(col)
    for (long c = 0; c < long(v.cols()); ++c) {
        for (std::size_t r = 0; r < v.rows(); ++r) col[r] = v(r, c);
        prefilter_1d(col.data(), col.size(), boundary);
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, c) = col[r];
    }
    return out;
}

double interp_cubic_2d(const SplineCoeffs& coeffs, double row, double col) {
    const auto& v = coeffs.values;
    const long nr = long(v.rows()), nc = long(v.cols());
    if (row < -2.0 || row > double(nr) + 1.0 || col < -2.0 || col > double(nc) + 1.0)
        throw std::out_of_range("interp_cubic_2d: point beyond boundary extension margin");
    const SplineBoundary b = coeffs.boundary;
    return eval_axis(row, [&](long r) {
        return eval_axis(col, [&](long c) {
            const long rr = (r >= 0 && r < nr) ? r
                            : long(b == SplineBoundary::mirror ? long(reflect_index(r, nr))
                                                               : clamp_index(r, nr));
            const long cc = (c >= 0 && c < nc) ? c
                            : long(b == SplineBoundary::mirror ? long(reflect_index(c, nc))
                                                               : clamp_index(c, nc));
            return v(std::size_t(rr), std::size_t(cc));
        });
    });
}

std::vector<double> interp_cubic_2d(const SplineCoeffs& coeffs,
                                    const std::vector<std::pair<double, double>>& points) {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        out[i] = interp_cubic_2d(coeffs, points[i].first, points[i].second);
    return out;
}

double interp_cubic_2d_taps(const SplineCoeffs& coeffs, double row, double col) {
    const auto& v = coeffs.values;
    const long nr = long(v.rows()), nc = long(v.cols());
    const long kr = long(std::floor(row));
    const long kc = long(std::floor(col));
    double acc = 0.0;
    for (long r = kr - 1; r <= kr + 2; ++r)
        for (long c = kc - 1; c <= kc + 2; ++c) {
            const double w = bspline_value(row - double(r)) * bspline_value(col - double(c));
            double cv;
            if (r >= 0 && r < nr && c >= 0 && c < nc) {
                cv = v(std::size_t(r), std::size_t(c));
            } else if (coeffs.boundary == SplineBoundary::mirror) {
                cv = v(reflect_index(r, nr), reflect_index(c, nc));
            } else {
                cv = v(std::size_t(clamp_index(r, nr)), std::size_t(clamp_index(c, nc)));
            }
            acc += w * cv;
        }
    return acc;
}

std::vector<double> bspline_spectrum(std::size_t n) {
    require(n >= 2, "bspline_spectrum: n must be >= 2");
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = (2.0 + std::cos(2.0 * 3.14159265358979323846 * double(k) / double(n))) / 3.0;
    return out;
}

namespace detail {

double eval_periodic_1d(const double* c, std::size_t n, double t) {
    const long nn = long(n);
    return eval_axis(t, [&](long i) {
        long r = i % nn;
        if (r < 0) r += nn;
        return c[r];
    });
}

double eval_zero_1d(const double* c, std::size_t n, double t) {
    const long nn = long(n);
    return eval_axis(t, [&](long i) { return (i >= 0 && i < nn) ? c[i] : 0.0; });
}

double eval_periodic_2d(const Array2D<double>& c, double t_row, double t_col) {
    const long nr = long(c.rows()), nc = long(c.cols());
    return eval_axis(t_row, [&](long r) {
        long rr = r % nr;
        if (rr < 0) rr += nr;
        return eval_axis(t_col, [&](long col) {
            long cc = col % nc;
            if (cc < 0) cc += nc;
            return c(std::size_t(rr), std::size_t(cc));
        });
    });
}

}  // namespace detail

}  // namespace lpr
