#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crane {

/// Thrown when a state leaves the regime the model is valid in
/// (over-swung rope, degenerate protocol duration, ...).
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical constants of the coupled trolley + load system.
///
/// The load hangs from the trolley on a massless rope of fixed length;
/// trolley friction is linear in the trolley velocity.
struct CraneParams {
    double m;      ///< load mass [kg]
    double M;      ///< trolley mass [kg]
    double l;      ///< rope length [m]
    double gamma;  ///< trolley friction coefficient [kg/s]
    double g;      ///< gravitational acceleration [m/s^2]
    double omega;  ///< pendulum angular frequency sqrt(g/l) [rad/s]

    CraneParams(double load_mass, double trolley_mass, double rope_length,
                double friction = 0.0, double gravity = 9.8)
        : m(load_mass),
          M(trolley_mass),
          l(rope_length),
          gamma(friction),
          g(gravity),
          omega(std::sqrt(gravity / rope_length)) {
        if (!(m > 0.0)) throw std::invalid_argument("CraneParams: m must be > 0");
        if (!(l > 0.0)) throw std::invalid_argument("CraneParams: l must be > 0");
        if (!(g > 0.0)) throw std::invalid_argument("CraneParams: g must be > 0");
        if (!(M >= 0.0)) throw std::invalid_argument("CraneParams: M must be >= 0");
        if (!(gamma >= 0.0)) throw std::invalid_argument("CraneParams: gamma must be >= 0");
    }

    double omega2() const { return g / l; }
};

/// Transport task: move the trolley from x=0 to x=d in time t_f.
struct TransportTask {
    double d;    ///< transport distance [m]
    double t_f;  ///< process duration [s]

    TransportTask(double distance, double duration) : d(distance), t_f(duration) {
        if (!(t_f > 0.0)) throw std::invalid_argument("TransportTask: t_f must be > 0");
        if (!std::isfinite(d)) throw std::invalid_argument("TransportTask: d must be finite");
    }
};

/// Instantaneous state of the load, in both the angle and the
/// horizontal-deviation representation.
///
/// q = l*sin(theta) is the horizontal deviation of the load from the
/// trolley; X = q + x is the lab-frame load position.
struct LoadState {
    double t = 0.0;          ///< time [s]
    double theta = 0.0;      ///< swing angle [rad]
    double theta_dot = 0.0;  ///< angular velocity [rad/s]
    double q = 0.0;          ///< horizontal deviation l*sin(theta) [m]
    double q_dot = 0.0;      ///< deviation velocity [m/s]
    double X = 0.0;          ///< lab-frame load position q + x [m]

    static LoadState at_rest() { return LoadState{}; }

    /// Build a state from the deviation representation. Requires |q| < l so
    /// the angle representation exists.
    static LoadState from_deviation(double q, double q_dot, const CraneParams& p,
                                    double t = 0.0, double x = 0.0) {
        LoadState s;
        s.t = t;
        s.q = q;
        s.q_dot = q_dot;
        if (std::abs(q) < p.l) {
            s.theta = std::asin(q / p.l);
            s.theta_dot = q_dot / (p.l * std::cos(s.theta));
        } else {
            s.theta = std::numeric_limits<double>::quiet_NaN();
            s.theta_dot = std::numeric_limits<double>::quiet_NaN();
        }
        s.X = q + x;
        return s;
    }

    /// Build a state from the angle representation.
    static LoadState from_angle(double theta, double theta_dot, const CraneParams& p,
                                double t = 0.0, double x = 0.0) {
        LoadState s;
        s.t = t;
        s.theta = theta;
        s.theta_dot = theta_dot;
        s.q = p.l * std::sin(theta);
        s.q_dot = p.l * theta_dot * std::cos(theta);
        s.X = s.q + x;
        return s;
    }
};

}  // namespace crane
