#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "lpradon/bspline.hpp"

using namespace lpr;

namespace {

// Dense interpolation solve on a boundary-extended signal; mirror closure at
// the far ends where the extension choice no longer matters.
std::vector<double> prefilter_oracle(const std::vector<double>& f, SplineBoundary boundary) {
    const int K = 48;
    const int n = int(f.size());
    const int m = n + 2 * K;
    std::vector<double> ext(m);
    for (int i = 0; i < m; ++i) {
        int src = i - K;
        if (src < 0) src = (boundary == SplineBoundary::mirror) ? -src : 0;
        if (src >= n) src = (boundary == SplineBoundary::mirror) ? 2 * (n - 1) - src : n - 1;
        ext[i] = f[std::size_t(src)];
    }
    std::vector<double> a(std::size_t(m) * m, 0.0), rhs(m);
    auto at = [&](int r, int c) -> double& { return a[std::size_t(r) * m + c]; };
    for (int i = 0; i < m; ++i) {
        rhs[i] = 6.0 * ext[i];
        if (i == 0) {
            at(0, 0) = 4.0;
            at(0, 1) = 2.0;
        } else if (i == m - 1) {
            at(i, i - 1) = 2.0;
            at(i, i) = 4.0;
        } else {
            at(i, i - 1) = 1.0;
            at(i, i) = 4.0;
            at(i, i + 1) = 1.0;
        }
    }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        for (int c = 0; c < m; ++c) std::swap(at(piv, c), at(col, c));
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < m; ++r) {
            const double fac = at(r, col) / at(col, col);
            for (int c = col; c < m; ++c) at(r, c) -= fac * at(col, c);
            rhs[r] -= fac * rhs[col];
        }
    }
    std::vector<double> sol(m);
    for (int r = m - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < m; ++c) s -= at(r, c) * sol[c];
        sol[r] = s / at(r, r);
    }
    return std::vector<double>(sol.begin() + K, sol.begin() + K + n);
}

GridSpec unit_grid(std::size_t rows, std::size_t cols) {
    return {GridKind::cartesian, {rows, 0.0, 1.0}, {cols, 0.0, 1.0}};
}

}  // namespace

TEST_SUITE("bspline") {

TEST_CASE("kernel values and support") {
    CHECK(bspline_value(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(bspline_value(1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(bspline_value(2.0) == 0.0);
    CHECK(bspline_value(2.5) == 0.0);
    CHECK(bspline_value(0.5) == doctest::Approx(2.875 / 6.0).epsilon(1e-15));
    CHECK(bspline_value(1.5) == doctest::Approx(0.125 / 6.0).epsilon(1e-15));
    for (double x : {0.1, 0.7, 1.2, 1.9})
        CHECK(bspline_value(-x) == doctest::Approx(bspline_value(x)).epsilon(1e-15));
}

TEST_CASE("weight tuples at pinned offsets") {
    const auto w0 = bspline_weights(0.0);
    CHECK(w0[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w0[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(w0[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(w0[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const auto wh = bspline_weights(0.5);
    CHECK(wh[0] == doctest::Approx(1.0 / 48.0).epsilon(1e-12));
    CHECK(wh[1] == doctest::Approx(23.0 / 48.0).epsilon(1e-12));
    CHECK(wh[2] == doctest::Approx(23.0 / 48.0).epsilon(1e-12));
    CHECK(wh[3] == doctest::Approx(1.0 / 48.0).epsilon(1e-12));
}

TEST_CASE("weights form a partition of unity") {
    test::Rng rng(1234);
    for (int i = 0; i < 10000; ++i) {
        const double alpha = rng.uniform(0.0, 1.0);
        const auto w = bspline_weights(alpha);
        const double sum = w[0] + w[1] + w[2] + w[3];
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        for (double v : w) CHECK(v >= 0.0);
    }
}

TEST_CASE("prefilter matches dense interpolation solve") {
    test::Rng rng(77);
    for (SplineBoundary b : {SplineBoundary::mirror, SplineBoundary::clamp}) {
        std::vector<double> f(40);
        for (auto& v : f) v = rng.uniform(-1.0, 1.0);
        const auto got = prefilter_1d(f, b);
        const auto want = prefilter_oracle(f, b);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            num += (got[i] - want[i]) * (got[i] - want[i]);
            den += want[i] * want[i];
        }
        CHECK(std::sqrt(num / den) <= 1e-6);
    }
}

TEST_CASE("reconvolution with the 1-4-1 stencil restores mirror samples") {
    test::Rng rng(78);
    std::vector<double> f(32);
    for (auto& v : f) v = rng.uniform(-1.0, 1.0);
    const auto c = prefilter_1d(f, SplineBoundary::mirror);
    auto fetch = [&](long i) {
        if (i < 0) i = -i;
        if (i >= long(c.size())) i = 2 * (long(c.size()) - 1) - i;
        return c[std::size_t(i)];
    };
    for (long k = 0; k < long(f.size()); ++k) {
        const double back = (fetch(k - 1) + 4.0 * fetch(k) + fetch(k + 1)) / 6.0;
        CHECK(std::abs(back - f[std::size_t(k)]) <= 1e-10);
    }
}

TEST_CASE("2-d prefilter commutes across axis order and separates products") {
    test::Rng rng(79);
    const std::size_t R = 12, C = 17;
    Array2D<double> img(R, C);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) img(r, c) = rng.uniform(-1.0, 1.0);
    const auto q = prefilter_2d(img, unit_grid(R, C), SplineBoundary::mirror);

    // Columns first, then rows.
    Array2D<double> alt = img;
    std::vector<double> col(R);
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t r = 0; r < R; ++r) col[r] = alt(r, c);
        prefilter_1d(col.data(), col.size(), SplineBoundary::mirror);
        for (std::size_t r = 0; r < R; ++r) alt(r, c) = col[r];
    }
    for (std::size_t r = 0; r < R; ++r)
        prefilter_1d(alt.row(r), C, SplineBoundary::mirror);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c)
            CHECK(std::abs(q.values(r, c) - alt(r, c)) <= 1e-12);

    std::vector<double> u(R), v(C);
    for (auto& x : u) x = rng.uniform(-1.0, 1.0);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    Array2D<double> prod(R, C);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) prod(r, c) = u[r] * v[c];
    const auto qp = prefilter_2d(prod, unit_grid(R, C), SplineBoundary::mirror);
    const auto qu = prefilter_1d(u, SplineBoundary::mirror);
    const auto qv = prefilter_1d(v, SplineBoundary::mirror);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c)
            CHECK(std::abs(qp.values(r, c) - qu[r] * qv[c]) <= 1e-10);
}

TEST_CASE("interpolation reproduces lattice samples and interior linear ramps") {
    test::Rng rng(80);
    const std::size_t N = 16;
    Array2D<double> img(N, N);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) img(r, c) = rng.uniform(-1.0, 1.0);
    const auto q = prefilter_2d(img, unit_grid(N, N), SplineBoundary::mirror);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            CHECK(std::abs(interp_cubic_2d(q, double(r), double(c)) - img(r, c)) <= 1e-6);

    // Mirror extension bends a ramp at the edges; the bend decays like the
    // prefilter pole (~0.268) per sample, so test deep interior points only.
    Array2D<double> ramp(64, 64);
    for (std::size_t r = 0; r < 64; ++r)
        for (std::size_t c = 0; c < 64; ++c) ramp(r, c) = 2.0 * double(r) - 3.0 * double(c) + 1.0;
    const auto qr = prefilter_2d(ramp, unit_grid(64, 64), SplineBoundary::mirror);
    for (int i = 0; i < 200; ++i) {
        const double r = rng.uniform(24.0, 39.0);
        const double c = rng.uniform(24.0, 39.0);
        CHECK(std::abs(interp_cubic_2d(qr, r, c) - (2.0 * r - 3.0 * c + 1.0)) <= 1e-10);
    }
}

TEST_CASE("folded evaluation agrees with the 16-tap reference") {
    test::Rng rng(81);
    const std::size_t N = 32;
    Array2D<double> img(N, N);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) img(r, c) = rng.uniform(-1.0, 1.0);
    for (SplineBoundary b : {SplineBoundary::mirror, SplineBoundary::clamp}) {
        const auto q = prefilter_2d(img, unit_grid(N, N), b);
        for (int i = 0; i < 1000; ++i) {
            const double r = rng.uniform(-1.5, double(N) + 0.5);
            const double c = rng.uniform(-1.5, double(N) + 0.5);
            const double fast = interp_cubic_2d(q, r, c);
            const double ref = interp_cubic_2d_taps(q, r, c);
            CHECK(std::abs(fast - ref) <= 1e-6);
        }
    }
    const auto q = prefilter_2d(img, unit_grid(N, N), SplineBoundary::mirror);
    CHECK_THROWS_AS((void)interp_cubic_2d(q, -3.0, 4.0), std::out_of_range);
    CHECK_THROWS_AS((void)interp_cubic_2d(q, 4.0, double(N) + 1.5), std::out_of_range);
}

TEST_CASE("batch evaluation matches pointwise evaluation") {
    test::Rng rng(82);
    Array2D<double> img(8, 8);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) img(r, c) = rng.uniform(-1.0, 1.0);
    const auto q = prefilter_2d(img, unit_grid(8, 8), SplineBoundary::mirror);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 50; ++i) pts.emplace_back(rng.uniform(1.0, 6.0), rng.uniform(1.0, 6.0));
    const auto batch = interp_cubic_2d(q, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(batch[i] == doctest::Approx(interp_cubic_2d(q, pts[i].first, pts[i].second))
                              .epsilon(1e-14));
}

TEST_CASE("frequency response matches the evaluation stencil") {
    const std::size_t n = 64;
    const auto spec = bspline_spectrum(n);
    CHECK(spec.size() == n);
    CHECK(spec[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spec[n / 2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(spec[n / 4] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    for (double v : spec) CHECK(v >= 1.0 / 3.0 - 1e-15);

    // Dividing a periodic signal's DFT by the response yields coefficients
    // whose lattice evaluation restores the signal.
    test::Rng rng(83);
    std::vector<double> f(n);
    for (auto& v : f) v = rng.uniform(-1.0, 1.0);
    const double pi = std::acos(-1.0);
    std::vector<std::complex<double>> F(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += f[j] * std::exp(std::complex<double>(0.0, -2.0 * pi * double(k * j) / double(n)));
        F[k] = acc / spec[k];
    }
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += F[k] * std::exp(std::complex<double>(0.0, 2.0 * pi * double(k * j) / double(n)));
        c[j] = acc.real() / double(n);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double back = detail::eval_periodic_1d(c.data(), n, double(j));
        CHECK(std::abs(back - f[j]) <= 1e-10);
    }
}

TEST_CASE("zero-extended and periodic evaluation behave at the edges") {
    test::Rng rng(84);
    std::vector<double> c(16);
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);
    CHECK(detail::eval_zero_1d(c.data(), c.size(), -3.0) == 0.0);
    CHECK(detail::eval_zero_1d(c.data(), c.size(), 40.0) == 0.0);
    // Interior agreement between the two conventions.
    for (double t : {3.2, 7.9, 11.5})
        CHECK(detail::eval_zero_1d(c.data(), c.size(), t) ==
              doctest::Approx(detail::eval_periodic_1d(c.data(), c.size(), t)).epsilon(1e-14));
    // Periodicity.
    for (double t : {0.3, 5.7, 15.2})
        CHECK(detail::eval_periodic_1d(c.data(), c.size(), t) ==
              doctest::Approx(detail::eval_periodic_1d(c.data(), c.size(), t + 16.0))
                  .epsilon(1e-13));

    Array2D<double> c2(8, 12);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t col = 0; col < 12; ++col) c2(r, col) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < 64; ++i) {
        const double tr = rng.uniform(-8.0, 16.0);
        const double tc = rng.uniform(-12.0, 24.0);
        CHECK(detail::eval_periodic_2d(c2, tr, tc) ==
              doctest::Approx(detail::eval_periodic_2d(c2, tr + 8.0, tc - 12.0)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
