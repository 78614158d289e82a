#include "lpradon/kernel.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "lpradon/fft.hpp"

namespace lpr {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogHalf2Pi = 0.91893853320467274178;  // log(2 pi) / 2

// Eighth-order end corrections for the trapezoid rule: deltas added to the
// unit weights at the first seven nodes (endpoint included) and mirrored at
// the other end. The integers sum to zero, so the total mass is untouched.
constexpr double kEndCorrNum[7] = {-23681.0, 55688.0, -66109.0, 57024.0,
                                   -31523.0, 9976.0,  -1375.0};
constexpr double kEndCorrDen = 120960.0;

double end_corr(int j) { return kEndCorrNum[j] / kEndCorrDen; }

// log(sin(pi z)) up to a multiple of 2 pi i, stable for large Im z >= 0.
cd log_sin_pi_upper(cd z) {
    const double k = std::floor(z.real());
    const cd zr = z - k;  // Re in [0, 1)
    cd val;
    if (z.imag() > 1.0) {
        // sin(pi z) = -exp(-i pi z) (1 - exp(2 i pi z)) / (2 i); the second
        // factor is 1 + O(exp(-2 pi Im z)).
        const cd small = std::exp(cd(0.0, 2.0 * kPi) * zr);
        val = cd(0.0, -kPi) * zr + std::log(cd(1.0, 0.0) - small) +
              cd(-std::log(2.0), kPi / 2.0);
    } else {
        val = std::log(std::sin(kPi * zr));
    }
    if (std::fmod(std::abs(k), 2.0) == 1.0) val += cd(0.0, kPi);  // (-1)^k
    return val;
}

// Lanczos approximation (g = 7, 9 terms), valid for Re z >= 0.5.
cd lanczos_lgamma(cd z) {
    static const double c[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};
    z -= 1.0;
    cd x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    const cd t = z + 7.5;
    return kLogHalf2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

namespace detail {

std::complex<double> lgamma_complex(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        // Pole: callers exponentiate, so +inf encodes 1/Gamma = 0.
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    if (z.imag() < 0.0) return std::conj(lgamma_complex(std::conj(z)));
    if (z.real() < 0.5) {
        // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
        return std::log(kPi) - log_sin_pi_upper(z) - lgamma_complex(1.0 - z);
    }
    return lanczos_lgamma(z);
}

}  // namespace detail

namespace {

void check_domain(cd alpha, double beta, bool allow_minus_one) {
    require(beta > 0.0 && beta < kPi / 2.0, "kernel: beta must lie in (0, pi/2)");
    require(alpha.real() > -1.0 ||
                (alpha.real() == -1.0 && (allow_minus_one || alpha.imag() != 0.0)),
            "kernel: Re(alpha) must be >= -1");
}

// Gamma-ratio term. Poles of the denominator gammas give an exact zero.
cd gamma_ratio_term(double mu, cd alpha) {
    const cd lp = detail::lgamma_complex(0.5 * (alpha + 1.0)) +
                  detail::lgamma_complex(cd(0.5, 0.0)) +
                  detail::lgamma_complex(0.5 * alpha + 1.0) -
                  detail::lgamma_complex(0.5 * (alpha + mu) + 1.0) -
                  detail::lgamma_complex(0.5 * (alpha - mu) + 1.0);
    if (!std::isfinite(lp.real())) {
        if (lp.real() < 0.0) return {0.0, 0.0};
        throw KernelEvalError("kernel: gamma-ratio term is singular");
    }
    return std::exp(lp);
}

// Peak log-magnitude of the partial terms of the series below, scanned in
// double precision from the exact term ratios. Determines how many bits the
// summation needs: the result cancels down from terms this large.
double series_peak_log(cd a2, cd a3, cd b1, cd b2, double z) {
    const double lz = std::log(z);
    double lr = 0.0;
    double peak = 0.0;
    for (long j = 0; j < 200000; ++j) {
        const double num = std::norm(a2 + double(j)) * std::norm(a3 + double(j));
        const double den = std::norm(b1 + double(j)) * std::norm(b2 + double(j));
        if (den == 0.0) return std::numeric_limits<double>::infinity();
        const double step = 0.5 * std::log(num / den) + lz;
        if (!std::isfinite(step)) break;  // numerator hit zero: series terminates
        lr += step;
        peak = std::max(peak, lr);
        if (lr < peak - 80.0) break;
    }
    return peak;
}

constexpr long kMaxSeriesTerms = 100000;

// Direct summation of sum_j (a2)_j (a3)_j / ((b1)_j (b2)_j) z^j in extended
// precision (the (1)_j / j! factors cancel). Terminates once a term falls
// below 1e-16 of the partial sum and terms are no longer growing.
class MpSeries {
public:
    explicit MpSeries(mpfr_prec_t prec) {
        mpfr_inits2(prec, a2r_, a2i_, a3r_, a3i_, b1r_, b1i_, b2r_, b2i_, tr_,
                    ti_, sr_, si_, xr_, xi_, d2_, u_, v_, w_, tt_, ss_, prev_,
                    (mpfr_ptr) nullptr);
    }
    ~MpSeries() {
        mpfr_clears(a2r_, a2i_, a3r_, a3i_, b1r_, b1i_, b2r_, b2i_, tr_, ti_,
                    sr_, si_, xr_, xi_, d2_, u_, v_, w_, tt_, ss_, prev_,
                    (mpfr_ptr) nullptr);
    }
    MpSeries(const MpSeries&) = delete;
    MpSeries& operator=(const MpSeries&) = delete;

    cd sum(cd a2, cd a3, cd b1, cd b2, double z) {
        const auto rn = MPFR_RNDN;
        mpfr_set_d(a2r_, a2.real(), rn);
        mpfr_set_d(a2i_, a2.imag(), rn);
        mpfr_set_d(a3r_, a3.real(), rn);
        mpfr_set_d(a3i_, a3.imag(), rn);
        mpfr_set_d(b1r_, b1.real(), rn);
        mpfr_set_d(b1i_, b1.imag(), rn);
        mpfr_set_d(b2r_, b2.real(), rn);
        mpfr_set_d(b2i_, b2.imag(), rn);
        mpfr_set_ui(tr_, 1, rn);
        mpfr_set_ui(ti_, 0, rn);
        mpfr_set_ui(sr_, 1, rn);
        mpfr_set_ui(si_, 0, rn);
        mpfr_set_inf(prev_, 1);
        for (long j = 0; j < kMaxSeriesTerms; ++j) {
            // t *= (a2 + j)(a3 + j)
            mpfr_set(xr_, a2r_, rn);
            mpfr_set(xi_, a2i_, rn);
            cmul(xr_, xi_, a3r_, a3i_);
            cmul(tr_, ti_, xr_, xi_);
            // t /= (b1 + j)(b2 + j): multiply by the conjugate, divide by |.|^2
            mpfr_set(xr_, b1r_, rn);
            mpfr_set(xi_, b1i_, rn);
            cmul(xr_, xi_, b2r_, b2i_);
            mpfr_sqr(d2_, xr_, rn);
            mpfr_sqr(u_, xi_, rn);
            mpfr_add(d2_, d2_, u_, rn);
            mpfr_neg(xi_, xi_, rn);
            cmul(tr_, ti_, xr_, xi_);
            mpfr_div(tr_, tr_, d2_, rn);
            mpfr_div(ti_, ti_, d2_, rn);
            // t *= z
            mpfr_mul_d(tr_, tr_, z, rn);
            mpfr_mul_d(ti_, ti_, z, rn);
            // s += t
            mpfr_add(sr_, sr_, tr_, rn);
            mpfr_add(si_, si_, ti_, rn);
            // convergence: |t|^2 <= 1e-32 |s|^2 and |t| no longer growing
            mpfr_sqr(tt_, tr_, rn);
            mpfr_sqr(u_, ti_, rn);
            mpfr_add(tt_, tt_, u_, rn);
            mpfr_sqr(ss_, sr_, rn);
            mpfr_sqr(u_, si_, rn);
            mpfr_add(ss_, ss_, u_, rn);
            mpfr_mul_d(u_, ss_, 1e-32, rn);
            if (mpfr_cmp(tt_, u_) <= 0 && mpfr_cmp(tt_, prev_) <= 0) {
                return {mpfr_get_d(sr_, rn), mpfr_get_d(si_, rn)};
            }
            mpfr_set(prev_, tt_, rn);
            mpfr_add_ui(a2r_, a2r_, 1, rn);
            mpfr_add_ui(a3r_, a3r_, 1, rn);
            mpfr_add_ui(b1r_, b1r_, 1, rn);
            mpfr_add_ui(b2r_, b2r_, 1, rn);
        }
        throw KernelEvalError("kernel: series did not converge within 100000 terms");
    }

private:
    // (xr, xi) *= (yr, yi), safe because the products are formed before writes.
    void cmul(mpfr_t xr, mpfr_t xi, const mpfr_t yr, const mpfr_t yi) {
        const auto rn = MPFR_RNDN;
        mpfr_mul(u_, xr, yr, rn);
        mpfr_mul(v_, xi, yi, rn);
        mpfr_sub(u_, u_, v_, rn);
        mpfr_mul(v_, xr, yi, rn);
        mpfr_mul(w_, xi, yr, rn);
        mpfr_set(xr, u_, rn);
        mpfr_add(xi, v_, w_, rn);
    }

    mpfr_t a2r_, a2i_, a3r_, a3i_, b1r_, b1i_, b2r_, b2i_;
    mpfr_t tr_, ti_, sr_, si_;
    mpfr_t xr_, xi_, d2_;
    mpfr_t u_, v_, w_;
    mpfr_t tt_, ss_, prev_;
};

}  // namespace

std::complex<double> p_closed_form(double mu, std::complex<double> alpha, double beta) {
    check_domain(alpha, beta, false);  // the prefactors divide by alpha + 1
    mu = std::abs(mu);  // the integral is even in mu

    const double cosb = std::cos(beta);
    const double z = cosb * cosb;
    const double logcos = std::log(cosb);

    const cd p0 = gamma_ratio_term(mu, alpha);

    const cd ap1 = alpha + 1.0;
    const cd ap2 = alpha + 2.0;
    const cd c1 = 2.0 * mu * std::exp(ap2 * logcos) * std::sin(mu * beta) / (ap1 * ap2);
    const cd c2 = -2.0 * std::exp(ap1 * logcos) * std::cos(mu * beta) *
                  std::sin(beta) / ap1;

    const cd a2 = 0.5 * (alpha + mu) + 1.0;
    const cd a3 = 0.5 * (alpha - mu) + 1.0;
    const cd b1 = 0.5 * (alpha + 3.0);
    const cd b2a = 0.5 * alpha + 2.0;
    const cd b2b = 0.5 * alpha + 1.0;

    // b2b is the smaller denominator parameter, so it bounds both series.
    const double peak = series_peak_log(a2, a3, b1, b2b, z);
    if (!std::isfinite(peak)) {
        throw KernelEvalError("kernel: series parameter at a pole");
    }
    const long bits = 64 + (long)std::ceil(1.08 * peak / std::log(2.0));
    if (bits > 32768) {
        throw KernelEvalError("kernel: precision demand out of range");
    }

    MpSeries series((mpfr_prec_t)bits);
    const cd f1 = series.sum(a2, a3, b1, b2a, z);
    const cd f2 = series.sum(a2, a3, b1, b2b, z);
    return p0 + c1 * f1 + c2 * f2;
}

std::complex<double> p_quadrature(double mu, std::complex<double> alpha, double beta,
                                  int oversampling) {
    check_domain(alpha, beta, true);  // alpha = -1 integrates fine for beta < pi/2
    require(oversampling >= 1, "kernel: oversampling must be >= 1");

    const double rate =
        (std::abs(mu) + std::abs(alpha.imag()) * std::tan(beta)) * beta / kPi;
    const long n = (long)oversampling *
                   std::max<long>(32, (long)std::ceil(rate));
    const double h = 2.0 * beta / double(n);

    cd acc(0.0, 0.0);
    for (long j = 0; j <= n; ++j) {
        double w = 1.0;
        if (j == 0 || j == n) w = 0.5;
        if (j < 7) w += end_corr((int)j);
        if (n - j < 7) w += end_corr((int)(n - j));
        const double theta = -beta + double(j) * h;
        const cd val = std::exp(cd(0.0, mu * theta) + alpha * std::log(std::cos(theta)));
        acc += w * val;
    }
    return h * acc;
}

namespace {

long next_pow2(long n) {
    long p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Whole-row quadrature: one FFT of the weighted integrand samples gives the
// integral at every row frequency at once. With theta_j = -beta + j h,
// h = 2 beta / n, and mu(k) = -pi k / beta:
//   P(mu(k)) = h (-1)^k sum_j w_j cos(theta_j)^alpha exp(-2 pi i j k / n).
// The endpoint weights fold: node 0 and node n coincide on the circle.
std::vector<cd> quadrature_row(cd alpha, double beta, long nts) {
    const double mumax = kPi * double(nts) / beta;
    const double rate =
        (mumax + std::abs(alpha.imag()) * std::tan(beta)) * beta / kPi;
    const long n = next_pow2(16L * std::max<long>(32, (long)std::ceil(rate)));
    const double h = 2.0 * beta / double(n);

    std::vector<cd> g((std::size_t)n);
    for (long j = 0; j < n; ++j) {
        double w = 1.0;
        if (j == 0) w += 2.0 * end_corr(0);
        if (j >= 1 && j < 7) w += end_corr((int)j);
        if (n - j < 7) w += end_corr((int)(n - j));
        const double theta = -beta + double(j) * h;
        g[(std::size_t)j] = w * std::exp(alpha * std::log(std::cos(theta)));
    }
    fft::c2c_1d(g.data(), (std::size_t)n, fft::forward);

    std::vector<cd> row((std::size_t)(2 * nts));
    for (long kt = -nts; kt < nts; ++kt) {
        const long idx = ((kt % n) + n) % n;
        cd val = h * g[(std::size_t)idx];
        if (kt & 1L) val = -val;
        row[(std::size_t)((kt + 2 * nts) % (2 * nts))] = val;
    }
    return row;
}

cd column_alpha(KernelKind kind, long k_rho, double ell) {
    // ell = -log(a_r), the rho period.
    const double y = 2.0 * kPi * double(k_rho) / ell;
    return kind == KernelKind::radon ? cd(-1.0, -y) : cd(0.0, y);
}

long signed_freq(std::size_t idx, std::size_t count) {
    const long n = (long)count;
    const long i = (long)idx;
    return i < (n + 1) / 2 ? i : i - n;
}

KernelSpectrum build_spectrum(const GeometryPlan& plan, KernelKind kind,
                              KernelMethod method) {
    const long nts = plan.N_theta_sector;
    const std::size_t rows = (std::size_t)(2 * nts);
    const std::size_t cols = (std::size_t)plan.N_rho;
    const double beta = plan.constants.beta;
    const double ell = -plan.log_ar();

    KernelSpectrum spec;
    spec.kind = kind;
    spec.coeffs = Array2D<cd>(rows, cols);

    auto mu_of = [&](long kt) { return -kPi * double(kt) / beta; };
    auto row_of = [&](long kt) { return (std::size_t)(((kt % (long)rows) + (long)rows) % (long)rows); };

    for (std::size_t v = 0; v < cols; ++v) {
        const long krho = signed_freq(v, cols);
        const cd alpha = column_alpha(kind, krho, ell);

        if (kind == KernelKind::backprojection && krho == 0) {
            // alpha = 0: the integral is elementary, 2 sin(mu beta) / mu.
            for (long kt = -nts; kt < nts; ++kt) {
                const double mu = mu_of(kt);
                spec.coeffs(row_of(kt), v) =
                    kt == 0 ? cd(2.0 * beta, 0.0)
                            : cd(2.0 * std::sin(mu * beta) / mu, 0.0);
            }
            continue;
        }

        const bool closed_ok =
            method == KernelMethod::closed_form &&
            !(kind == KernelKind::radon && krho == 0);  // alpha = -1 exactly

        if (!closed_ok) {
            const std::vector<cd> row = quadrature_row(alpha, beta, nts);
            for (std::size_t t = 0; t < rows; ++t) spec.coeffs(t, v) = row[t];
            continue;
        }

        // Mirror column: coeff(-kt, -krho) = conj(coeff(kt, krho)), and the
        // integral is even in mu, so one evaluation fills up to four bins.
        const long mrho = -krho;
        const std::size_t vm =
            (std::size_t)(((mrho % (long)cols) + (long)cols) % (long)cols);
        const bool mirror = signed_freq(vm, cols) == mrho && vm != v && krho > 0;
        if (krho < 0 && signed_freq(
                            (std::size_t)(((-krho) % (long)cols)), cols) == -krho) {
            continue;  // filled when the positive column was processed
        }

        for (long kt = 0; kt <= nts; ++kt) {
            cd val;
            bool fell_back = false;
            try {
                val = p_closed_form(mu_of(kt), alpha, beta);
            } catch (const KernelEvalError&) {
                val = p_quadrature(mu_of(kt), alpha, beta, 16);
                fell_back = true;
            }
            const bool has_neg = kt > 0 && kt < nts;
            spec.coeffs(row_of(kt), v) = val;
            if (fell_back) ++spec.fallback_bins;
            if (has_neg) {
                spec.coeffs(row_of(-kt), v) = val;  // even in mu
                if (fell_back) ++spec.fallback_bins;
            }
            if (mirror) {
                spec.coeffs(row_of(-kt), vm) = std::conj(val);
                if (fell_back) ++spec.fallback_bins;
                if (has_neg) {
                    spec.coeffs(row_of(kt), vm) = std::conj(val);
                    if (fell_back) ++spec.fallback_bins;
                }
            }
        }
    }

    // With an even column count the rho Nyquist column is its own mirror, so
    // a Hermitian multiplier must be real there; keep the real part (the mean
    // of the two conjugate continuous coefficients it stands for).
    if (cols % 2 == 0) {
        const std::size_t vn = cols / 2;
        for (std::size_t t = 0; t < rows; ++t) {
            spec.coeffs(t, vn) = cd(spec.coeffs(t, vn).real(), 0.0);
        }
    }
    return spec;
}

}  // namespace

KernelSpectrum zeta_spectrum(const GeometryPlan& plan, KernelMethod method) {
    return build_spectrum(plan, KernelKind::radon, method);
}

KernelSpectrum zeta_bp_spectrum(const GeometryPlan& plan, KernelMethod method) {
    return build_spectrum(plan, KernelKind::backprojection, method);
}

std::complex<double> kernel_coeff(const KernelSpectrum& spec, long k_theta, long k_rho) {
    const long rows = (long)spec.coeffs.rows();
    const long cols = (long)spec.coeffs.cols();
    require(rows > 0 && cols > 0, "kernel_coeff: empty spectrum");
    const std::size_t t = (std::size_t)(((k_theta % rows) + rows) % rows);
    const std::size_t v = (std::size_t)(((k_rho % cols) + cols) % cols);
    return spec.coeffs(t, v);
}

}  // namespace lpr
