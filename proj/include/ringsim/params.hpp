#pragma once

namespace ringsim {

/// Constants of the Bando-FTL longitudinal model plus the acceleration caps.
struct ModelParams {
    double alpha = 0.5;      ///< relaxation weight toward the optimal velocity [1/s]
    double beta = 20.0;      ///< follow-the-leader weight [m^2/s]
    double l_v = 4.5;        ///< vehicle length [m]
    double d_0 = 2.5;        ///< minimal distance of the optimal velocity law [m]
    double v_max = 9.75;     ///< asymptotic optimal velocity [m/s]
    double a_cap_max = 2.5;  ///< maximum acceleration [m/s^2]
    double a_cap_min = 4.0;  ///< maximum deceleration magnitude [m/s^2]

    /// Throws SimDomainError when an invariant is violated.
    void validate() const;
};

/// Intelligent-driver-model constants (optional alternative longitudinal law).
struct IdmParams {
    double v0 = 30.0;   ///< target speed [m/s]
    double s0 = 2.0;    ///< minimum net gap [m]
    double T = 1.5;     ///< time headway [s]
    double a = 1.0;     ///< maximum acceleration [m/s^2]
    double b = 2.0;     ///< comfortable deceleration [m/s^2]
    double delta = 4.0; ///< free-acceleration exponent

    void validate() const;
};

/// Thresholds and cadence of the incentive/safety/cooldown lane-change rule.
struct LaneChangeParams {
    double delta_i = 3.0; ///< incentive threshold [m/s^2]
    double delta_s = 0.5; ///< safety threshold [m/s^2]
    double tau = 5.0;     ///< cooldown between a vehicle's lane changes [s]
    int iter_lc = 50;     ///< decision cadence in timesteps

    void validate() const;
};

enum class TargetMode {
    PaperLiteral, ///< feed (n_j + l_v) / L_j directly into the equilibrium law
    Headway,      ///< feed the mean headway L_j / n_j (default)
};

/// Constants of the controlled vehicle's longitudinal and lateral controllers.
struct ControlParams {
    double k = 1.0;        ///< proportional gain [1/s]
    double v_min = 2.0;    ///< ramp start speed [m/s]
    double t_tr = 100.0;   ///< ramp duration [s]
    double gap_safe = 9.0; ///< safety-override engagement gap [m]
    double c1 = 0.5;       ///< variance-integral threshold for a lateral move
    double t1 = 10.0;      ///< variance averaging window [s]
    double t2 = 10.0;      ///< lateral-move cooldown [s]
    TargetMode target_mode = TargetMode::Headway;

    /// Needs the model because gap_safe must exceed the vehicle length.
    void validate(double l_v) const;
};

} // namespace ringsim
