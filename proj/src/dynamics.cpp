#include "ringsim/dynamics.hpp"

#include "ringsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace ringsim {

namespace {
const double kTanh2 = std::tanh(2.0);
} // namespace

void ModelParams::validate() const {
    if (alpha < 0.0 || beta < 0.0 || (alpha == 0.0 && beta == 0.0))
        throw SimDomainError("model weights must be nonnegative and not both zero");
    if (l_v <= 0.0 || d_0 <= 0.0 || v_max <= 0.0)
        throw SimDomainError("l_v, d_0 and v_max must be positive");
    if (a_cap_max <= 0.0 || a_cap_min <= 0.0)
        throw SimDomainError("acceleration caps must be positive");
}

void IdmParams::validate() const {
    if (v0 <= 0.0 || s0 <= 0.0 || T <= 0.0 || a <= 0.0 || b <= 0.0 || delta <= 0.0)
        throw SimDomainError("IDM parameters must be strictly positive");
}

void LaneChangeParams::validate() const {
    if (delta_i <= 0.0 || delta_s <= 0.0)
        throw SimDomainError("lane-change thresholds must be positive");
    if (tau < 0.0)
        throw SimDomainError("lane-change cooldown must be nonnegative");
    if (iter_lc < 1)
        throw SimDomainError("lane-change cadence must be at least one step");
}

void ControlParams::validate(double l_v) const {
    if (k <= 0.0)
        throw SimDomainError("controller gain must be positive");
    if (t_tr <= 0.0)
        throw SimDomainError("ramp duration must be positive");
    if (v_min < 0.0)
        throw SimDomainError("ramp start speed must be nonnegative");
    if (gap_safe <= l_v)
        throw SimDomainError("safety-override gap must exceed the vehicle length");
    if (c1 < 0.0)
        throw SimDomainError("variance-integral threshold must be nonnegative");
    if (t1 <= 0.0 || t2 < 0.0)
        throw SimDomainError("controller time constants out of range");
}

double optimal_velocity(double gap, const ModelParams& p) {
    return p.v_max * (std::tanh((gap - p.l_v) / p.d_0 - 2.0) + kTanh2) / (1.0 + kTanh2);
}

double optimal_velocity_prime(double gap, const ModelParams& p) {
    const double c = std::cosh((gap - p.l_v) / p.d_0 - 2.0);
    return p.v_max / (c * c * p.d_0 * (1.0 + kTanh2));
}

double equilibrium_speed(double headway, const ModelParams& p) {
    if (headway <= p.l_v)
        throw SimDomainError("equilibrium speed undefined for headway <= l_v");
    return optimal_velocity(headway, p);
}

double bando_ftl_accel(double v_ego, double gap, double v_leader, double alpha,
                       double beta, const ModelParams& p) {
    const double net = gap - p.l_v;
    if (net <= 0.0)
        throw CollisionError("gap <= l_v in Bando-FTL acceleration");
    return alpha * (optimal_velocity(gap, p) - v_ego) + beta * (v_leader - v_ego) / (net * net);
}

double bando_ftl_accel(double v_ego, double gap, double v_leader, const ModelParams& p) {
    return bando_ftl_accel(v_ego, gap, v_leader, p.alpha, p.beta, p);
}

double idm_accel(double v_ego, double gap_net, double dv, const IdmParams& q) {
    if (gap_net <= 0.0)
        throw CollisionError("net gap <= 0 in IDM acceleration");
    const double s_star = q.s0 + v_ego * q.T + v_ego * dv / (2.0 * std::sqrt(q.a * q.b));
    const double ratio = s_star / gap_net;
    return q.a * (1.0 - std::pow(v_ego / q.v0, q.delta) - ratio * ratio);
}

double clamp_accel(double a_raw, const ModelParams& p) {
    return std::min(std::max(a_raw, -p.a_cap_min), p.a_cap_max);
}

PrintedCriterion stability_paper(const ModelParams& p, int n, double length) {
    PrintedCriterion r;
    r.lhs = p.alpha / 2.0 + length * length * p.beta / (static_cast<double>(n) * n);
    r.rhs = optimal_velocity_prime(static_cast<double>(n) / length, p);
    r.unstable = r.lhs < r.rhs;
    return r;
}

std::vector<std::complex<double>> stability_spectrum(const ModelParams& p, int n,
                                                     double length) {
    if (n < 2)
        throw SimDomainError("stability analysis needs at least two vehicles");
    const double h = length / n;
    if (h <= p.l_v)
        throw SimDomainError("uniform headway <= l_v: no equilibrium exists");

    // Linearization about (headway h, speed V(h)). With gap perturbations per
    // Fourier mode, omega = exp(2 pi i k / n), each mode contributes
    //   lambda^2 - (b (omega - 1) - alpha) lambda - a (omega - 1) = 0,
    // where a = alpha V'(h) and b = beta / (h - l_v)^2.
    const double a = p.alpha * optimal_velocity_prime(h, p);
    const double net = h - p.l_v;
    const double b = p.beta / (net * net);

    std::vector<std::complex<double>> lambdas;
    lambdas.reserve(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        const std::complex<double> omega(std::cos(theta), std::sin(theta));
        const std::complex<double> shift = omega - 1.0;
        const std::complex<double> trace = b * shift - p.alpha;
        const std::complex<double> disc = std::sqrt(trace * trace + 4.0 * a * shift);
        lambdas.push_back((trace + disc) / 2.0);
        lambdas.push_back((trace - disc) / 2.0);
    }
    return lambdas;
}

StabilityReport stability_eigen(const ModelParams& p, int n, double length, double tol) {
    const auto lambdas = stability_spectrum(p, n, length);

    // Modes come in (k, 2k) index pairs per quadratic; entries 0 and 1 are the
    // k = 0 translation pair {0, -alpha}, excluded from the growth measure.
    double max_real = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 2; i < lambdas.size(); ++i)
        max_real = std::max(max_real, lambdas[i].real());

    StabilityReport rep;
    const PrintedCriterion printed = stability_paper(p, n, length);
    rep.paper_criterion_unstable = printed.unstable;
    rep.paper_lhs = printed.lhs;
    rep.paper_rhs = printed.rhs;
    rep.eigen_max_real = max_real;
    rep.eigen_unstable = max_real > tol;
    return rep;
}

} // namespace ringsim
