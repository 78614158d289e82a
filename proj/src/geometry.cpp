#include "lpradon/geometry.hpp"

#include <cmath>

namespace lpr {

namespace {

constexpr double kPi = 3.14159265358979323846;

int round_up_multiple(int v, int q) {
    return ((v + q - 1) / q) * q;
}

}  // namespace

double GeometryPlan::log_ar() const { return std::log(constants.a_r); }

GridSpec GeometryPlan::cartesian_grid() const {
    GridSpec g;
    g.kind = GridKind::cartesian;
    g.axis0 = {std::size_t(N), -0.5, 1.0 / N};
    g.axis1 = {std::size_t(N), -0.5, 1.0 / N};
    return g;
}

GridSpec GeometryPlan::polar_grid() const {
    GridSpec g;
    g.kind = GridKind::polar;
    g.axis0 = {std::size_t(N_theta), 0.0, dtheta_p};
    g.axis1 = {std::size_t(N_s), -0.5, ds};
    return g;
}

GridSpec GeometryPlan::sector_grid() const {
    GridSpec g;
    g.kind = GridKind::logpolar_sector;
    g.axis0 = {std::size_t(N_theta_sector), -constants.beta / 2, dtheta_p};
    g.axis1 = {std::size_t(N_rho), log_ar(), drho};
    return g;
}

GridSpec GeometryPlan::fine_grid() const {
    GridSpec g;
    g.kind = GridKind::logpolar_fine;
    g.axis0 = {std::size_t(N_theta_sector) * theta_refine, -constants.beta / 2, dtheta_lp};
    g.axis1 = {std::size_t(N_rho), log_ar(), drho};
    return g;
}

SectorConstants sector_constants(int M) {
    require(M >= 3, "sector_constants: M must be >= 3");
    const double beta = kPi / M;
    const double sh = std::sin(beta / 2);
    const double ch = std::cos(beta / 2);
    return {beta, sh / (1.0 + sh), (ch - sh) / (1.0 + sh)};
}

int default_n_theta(int N, int M) {
    const int raw = int(std::ceil(1.5 * N));
    return round_up_multiple(raw, 2 * M);
}

int nyquist_n_theta(int N, int M) {
    const int raw = int(std::ceil(kPi * N / 2));
    return round_up_multiple(raw, 2 * M);
}

GeometryPlan sampling_plan(int N, int M, int n_theta) {
    require(N >= 16 && N % 2 == 0, "sampling_plan: N must be even and >= 16");
    require(M >= 3, "sampling_plan: M must be >= 3");
    require(n_theta >= 2 * M, "sampling_plan: n_theta must be positive");

    GeometryPlan p;
    p.N = N;
    p.M = M;
    p.constants = sector_constants(M);
    p.N_theta = round_up_multiple(n_theta, 2 * M);
    p.N_s = N;
    p.ds = 1.0 / N;
    p.dtheta_p = kPi / p.N_theta;
    p.N_theta_sector = 2 * ((p.N_theta + 2 * M - 1) / (2 * M));

    // Minimal count whose log-radial step keeps the finest scale at 2 a_R / N.
    const double ar = p.constants.a_r;
    const double aR = p.constants.a_R;
    p.N_rho = int(std::ceil(std::log(ar) / std::log1p(-2.0 * aR / N)));
    p.drho = -std::log(ar) / p.N_rho;

    const double ratio = p.dtheta_p * N / (2.0 * aR);
    p.theta_refine = int(std::ceil(ratio - 1e-12));
    p.dtheta_lp = p.dtheta_p / p.theta_refine;
    return p;
}

GeometryPlan sampling_plan(int N, int M) {
    return sampling_plan(N, M, default_n_theta(N, M));
}

Vec2 map_T(int m, Vec2 x, const SectorConstants& sc) {
    const double c = std::cos(m * sc.beta);
    const double s = std::sin(m * sc.beta);
    return {sc.a_R * (c * x.x + s * x.y) + (1.0 - sc.a_R),
            sc.a_R * (-s * x.x + c * x.y)};
}

Vec2 map_T_inv(int m, Vec2 p, const SectorConstants& sc) {
    const double c = std::cos(m * sc.beta);
    const double s = std::sin(m * sc.beta);
    const double ux = (p.x - (1.0 - sc.a_R)) / sc.a_R;
    const double uy = p.y / sc.a_R;
    return {c * ux - s * uy, s * ux + c * uy};
}

std::pair<double, double> map_S(int m, double theta, double s, const SectorConstants& sc) {
    const double tp = theta - m * sc.beta;
    const double arg = sc.a_R * s + (1.0 - sc.a_R) * std::cos(tp);
    if (!(arg > 0.0)) throw std::domain_error("map_S: line outside sector (log argument <= 0)");
    return {tp, std::log(arg)};
}

std::pair<double, double> map_S_inv(int m, double theta_prime, double rho, const SectorConstants& sc) {
    const double s = (std::exp(rho) - (1.0 - sc.a_R) * std::cos(theta_prime)) / sc.a_R;
    return {theta_prime + m * sc.beta, s};
}

int theta_to_sector(double theta, const SectorConstants& sc, int M) {
    const long k = long(std::floor(theta / sc.beta + 0.5));
    long m = k % M;
    if (m < 0) m += M;
    return int(m);
}

SectorLine line_to_sector(double theta, double s, const SectorConstants& sc, int M) {
    const long k = long(std::floor(theta / sc.beta + 0.5));
    long m = k % M;
    if (m < 0) m += M;
    // k = m + M * halfturns; each half turn flips the offset sign.
    const long halfturns = (k - m) / M;
    const double sign = (halfturns % 2 == 0) ? 1.0 : -1.0;
    return {int(m), theta - double(k) * sc.beta, sign * s};
}

}  // namespace lpr
