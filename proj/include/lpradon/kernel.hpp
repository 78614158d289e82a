#pragma once

#include <complex>
#include <stdexcept>

#include "lpradon/geometry.hpp"
#include "lpradon/types.hpp"

namespace lpr {

enum class KernelKind { radon, backprojection };
enum class KernelMethod { quadrature, closed_form };

/// Signals that a closed-form evaluation could not reach its accuracy target.
struct KernelEvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fourier coefficients of a convolution kernel on the doubled log-polar
/// rectangle. Rows are theta bins (2 * N_theta_sector, FFT layout), columns
/// are rho bins (N_rho).
struct KernelSpectrum {
    Array2D<std::complex<double>> coeffs;
    KernelKind kind = KernelKind::radon;
    std::size_t fallback_bins = 0;  // closed-form bins that fell back to quadrature
};

/// Oscillatory power integral over [-beta, beta] of exp(i mu t) cos(t)^alpha,
/// evaluated by the gamma-ratio term plus two direct hypergeometric series.
/// Internal precision is raised to absorb the series cancellation.
std::complex<double> p_closed_form(double mu, std::complex<double> alpha, double beta);

/// Same integral by trapezoid with eighth-order end corrections.
std::complex<double> p_quadrature(double mu, std::complex<double> alpha, double beta,
                                  int oversampling = 8);

/// Spectrum of the forward (line) kernel: alpha = -2*pi*i*k_rho/(-log a_r) - 1.
KernelSpectrum zeta_spectrum(const GeometryPlan& plan,
                             KernelMethod method = KernelMethod::quadrature);

/// Spectrum of the back-projection kernel: alpha = -2*pi*i*k_rho/(log a_r).
KernelSpectrum zeta_bp_spectrum(const GeometryPlan& plan,
                                KernelMethod method = KernelMethod::quadrature);

/// Access by signed frequency indices (wrapped into the FFT layout).
std::complex<double> kernel_coeff(const KernelSpectrum& spec, long k_theta, long k_rho);

namespace detail {

/// Principal-branch-free log gamma for complex arguments (the imaginary part
/// is only meaningful modulo 2*pi; callers exponentiate).
std::complex<double> lgamma_complex(std::complex<double> z);

}  // namespace detail

}  // namespace lpr
