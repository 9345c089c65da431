#pragma once

#include "ringsim/params.hpp"

#include <complex>
#include <vector>

namespace ringsim {

/// Outcome of both stability checks for uniform single-lane flow.
struct StabilityReport {
    bool paper_criterion_unstable = false; ///< the printed inequality, verbatim
    double paper_lhs = 0.0;                ///< alpha/2 + L^2 beta / n^2
    double paper_rhs = 0.0;                ///< V'(n / L)
    double eigen_max_real = 0.0; ///< largest Re(lambda) over nonzero Fourier modes [1/s]
    bool eigen_unstable = false; ///< eigen_max_real > tolerance
};

/// Optimal velocity V(gap). Total in gap (tanh), zero at gap == l_v,
/// monotone increasing, asymptote v_max.
double optimal_velocity(double gap, const ModelParams& p);

/// Analytic derivative dV/dgap. Strictly positive.
double optimal_velocity_prime(double gap, const ModelParams& p);

/// Uniform-flow equilibrium speed at the given headway; equals V(headway)
/// because the speed-difference term vanishes at uniform flow.
/// Throws SimDomainError for headway <= l_v.
double equilibrium_speed(double headway, const ModelParams& p);

/// Uncapped Bando-FTL acceleration with explicit per-vehicle weights.
/// Throws CollisionError for gap <= l_v.
double bando_ftl_accel(double v_ego, double gap, double v_leader, double alpha,
                       double beta, const ModelParams& p);

/// Uncapped Bando-FTL acceleration with the global weights of `p`.
double bando_ftl_accel(double v_ego, double gap, double v_leader, const ModelParams& p);

/// Intelligent-driver-model acceleration. `gap_net` is bumper-to-bumper,
/// `dv` is v_ego - v_leader. Throws CollisionError for gap_net <= 0.
double idm_accel(double v_ego, double gap_net, double dv, const IdmParams& q);

/// Clamp into [-a_cap_min, a_cap_max].
double clamp_accel(double a_raw, const ModelParams& p);

struct PrintedCriterion {
    bool unstable = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// The stability inequality exactly as printed: unstable when
/// alpha/2 + L^2 beta / n^2 < V'(n / L). Kept verbatim for auditability;
/// it disagrees with the eigenvalue analysis (see stability_eigen).
PrintedCriterion stability_paper(const ModelParams& p, int n, double length);

/// All 2n eigenvalues of the single-lane flow linearized about the uniform
/// equilibrium, via the circulant structure: each Fourier mode k contributes
/// a closed-form quadratic pair. Ordered k = 0..n-1, two roots per mode.
/// Throws SimDomainError when length / n <= l_v.
std::vector<std::complex<double>> stability_spectrum(const ModelParams& p, int n,
                                                     double length);

/// Linear stability of uniform single-lane flow with n vehicles on a ring of
/// the given length: the largest real part over stability_spectrum with the
/// k = 0 translation pair excluded, plus the printed-criterion evaluation.
StabilityReport stability_eigen(const ModelParams& p, int n, double length,
                                double tol = 1e-9);

} // namespace ringsim
