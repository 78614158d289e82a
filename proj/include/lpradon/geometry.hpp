#pragma once

#include <utility>

#include "lpradon/types.hpp"

namespace lpr {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Per-sector geometry constants for sector half-angle beta/2.
struct SectorConstants {
    double beta;   ///< sector width pi/M, radians
    double a_R;    ///< contraction scale, in (0, 1/2)
    double a_r;    ///< inner radius bound for contributing lines, in (0, 1)
};

/// All sampling parameters and grid descriptors for one (N, M) configuration.
/// Immutable after construction; safe to share across threads.
struct GeometryPlan {
    int N = 0;                  ///< image side, pixels
    int M = 0;                  ///< sector count
    SectorConstants constants{};
    int N_theta = 0;            ///< polar angle count over [0, pi)
    int N_s = 0;                ///< polar offset count (= N)
    int N_rho = 0;              ///< log-radial count
    int N_theta_sector = 0;     ///< per-sector angle count on the coarse sector grid
    int theta_refine = 0;       ///< fine grid refinement: dtheta_p / dtheta_lp
    double dtheta_p = 0.0;
    double dtheta_lp = 0.0;
    double ds = 0.0;
    double drho = 0.0;

    double log_ar() const;      ///< log(a_r), the bottom of the rho range

    GridSpec cartesian_grid() const;
    GridSpec polar_grid() const;
    GridSpec sector_grid() const;   ///< coarse per-sector grid: [-beta/2, beta/2) x [log a_r, 0)
    GridSpec fine_grid() const;     ///< refined per-sector grid, same rho axis
};

/// Sector constants for M >= 3 sectors. Rejects M < 3 (a_r vanishes at M = 2).
SectorConstants sector_constants(int M);

/// Sampling plan with the default angle count ceil(3N/2) rounded up to a
/// multiple of 2M. Requires N even, N >= 16, M >= 3.
GeometryPlan sampling_plan(int N, int M);

/// Sampling plan with an explicit angle count, rounded up to a multiple of 2M
/// so that sector centers land exactly on polar grid rows.
GeometryPlan sampling_plan(int N, int M, int n_theta);

/// Default experimental angle count: ceil(3N/2) rounded up to a multiple of 2M.
int default_n_theta(int N, int M);

/// Angle count at the half-circle Nyquist bound: ceil(pi N / 2), rounded up to
/// a multiple of 2M.
int nyquist_n_theta(int N, int M);

/// T_m: rotate by -m beta, contract by a_R, translate to (1 - a_R, 0).
Vec2 map_T(int m, Vec2 x, const SectorConstants& sc);
Vec2 map_T_inv(int m, Vec2 p, const SectorConstants& sc);

/// S_m: (theta, s) -> (theta - m beta, log(a_R s + (1 - a_R) cos(theta - m beta))).
/// Throws std::domain_error when the log argument is <= 0 (out-of-sector line).
std::pair<double, double> map_S(int m, double theta, double s, const SectorConstants& sc);

/// Inverse of map_S: (theta_prime, rho) -> (theta, s).
std::pair<double, double> map_S_inv(int m, double theta_prime, double rho, const SectorConstants& sc);

/// Sector index of the nearest sector center: floor(theta/beta + 1/2) mod M.
int theta_to_sector(double theta, const SectorConstants& sc, int M);

/// Line (theta, s) expressed in its owning sector: sector index m, residual
/// angle in [-beta/2, beta/2), and the offset with the sign flip applied for
/// each half-turn of wrapping (a line is invariant under theta -> theta + pi,
/// s -> -s).
struct SectorLine {
    int m;
    double theta_res;
    double s;
};
SectorLine line_to_sector(double theta, double s, const SectorConstants& sc, int M);

}  // namespace lpr
