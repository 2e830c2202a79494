#pragma once

#include <cmath>

#include "crane/params.hpp"
#include "crane/protocol.hpp"

namespace crane {

/// Angular acceleration of the full nonlinear pendulum,
///   l*thetaddot + xddot*cos(theta) + g*sin(theta) = 0.
/// The rigid-rod crane model is not trusted once the load over-swings;
/// |theta| >= pi/2 raises RegimeError.
inline double exact_angular_acceleration(double theta, double xddot, const CraneParams& p) {
    if (!(std::abs(theta) < M_PI / 2.0))
        throw RegimeError("exact model left its validity range: |theta| >= pi/2");
    return -(xddot * std::cos(theta) + p.g * std::sin(theta)) / p.l;
}

inline double exact_rhs(const LoadState& s, const TrolleyProtocol& proto, const CraneParams& p,
                        double t) {
    return exact_angular_acceleration(s.theta, proto.xddot(t), p);
}

/// Small-oscillation limit, qddot = -omega^2 q - xddot.
inline double harmonic_acceleration(double q, double xddot, const CraneParams& p) {
    return -p.omega2() * q - xddot;
}

inline double harmonic_rhs(double q, double /*q_dot*/, const TrolleyProtocol& proto,
                           const CraneParams& p, double t) {
    return harmonic_acceleration(q, proto.xddot(t), p);
}

/// Force the motor exerts on the trolley: Newton's law for the trolley with
/// the rope reaction of the swinging load and viscous friction gamma*xdot.
inline double required_force(double theta, double theta_dot, double theta_ddot, double xdot,
                             double xddot, const CraneParams& p) {
    return (p.M + p.m) * xddot +
           p.m * p.l * (theta_ddot * std::cos(theta) - theta_dot * theta_dot * std::sin(theta)) +
           p.gamma * xdot;
}

inline double required_force(const LoadState& s, double theta_ddot, const TrolleyProtocol& proto,
                             const CraneParams& p, double t) {
    return required_force(s.theta, s.theta_dot, theta_ddot, proto.xdot(t), proto.xddot(t), p);
}

/// Lab-frame mechanical energy of the load, potential zero at the hanging
/// equilibrium theta = 0.
inline double load_energy_exact(double theta, double theta_dot, double xdot,
                                const CraneParams& p) {
    const double kin = 0.5 * p.m *
                       (xdot * xdot + p.l * p.l * theta_dot * theta_dot +
                        2.0 * p.l * xdot * theta_dot * std::cos(theta));
    return kin + p.m * p.g * p.l * (1.0 - std::cos(theta));
}

/// Harmonic counterpart in the deviation variable q = x_load - x.
inline double load_energy_harmonic(double q, double q_dot, double xdot, const CraneParams& p) {
    const double v = xdot + q_dot;
    return 0.5 * p.m * v * v + 0.5 * p.m * p.omega2() * q * q;
}

/// Lewis-Riesenfeld invariant of the driven harmonic model,
///   I = (p - m*alphadot)^2 / 2m + (m/2) omega^2 (q - alpha)^2,
/// constant along every harmonic trajectory when alpha itself solves the
/// forced-oscillator equation qddot + w^2 q = -xddot.
inline double invariant_I(double q, double momentum, double alpha, double alpha_dot,
                          const CraneParams& p) {
    const double dp = momentum - p.m * alpha_dot;
    const double dq = q - alpha;
    return dp * dp / (2.0 * p.m) + 0.5 * p.m * p.omega2() * dq * dq;
}

/// Moving-frame Hamiltonian H = p^2/2m + (m/2) omega^2 q^2 + m xddot q.
/// Coincides with the load energy only where xddot = 0 (protocol edges).
inline double moving_frame_hamiltonian(double q, double momentum, const TrolleyProtocol& proto,
                                       const CraneParams& p, double t) {
    return momentum * momentum / (2.0 * p.m) + 0.5 * p.m * p.omega2() * q * q +
           p.m * proto.xddot(t) * q;
}

}  // namespace crane
