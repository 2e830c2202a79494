#pragma once

#include <vector>

#include "crane/integrator.hpp"
#include "crane/params.hpp"
#include "crane/protocol.hpp"

namespace crane {

/// Total engine power in the harmonic regime,
///   P_tot = (M xddot - m q w^2 + gamma xdot) xdot.
double total_power_harmonic(double q, double xdot, double xddot, const CraneParams& params);

inline double total_power_harmonic(double q, const TrolleyProtocol& proto,
                                   const CraneParams& params, double t) {
    return total_power_harmonic(q, proto.xdot(t), proto.xddot(t), params);
}

/// Total engine power F_a * xdot for the exact model.
double total_power_exact(double F_a, double xdot);

/// Rate of change of the load energy. Harmonic: P = -m q w^2 xdot.
double load_power(double q, const CraneParams& params, double xdot);

/// Exact-model load power dE/dt in closed form.
double load_power_exact(double theta, double theta_dot, double xdot, double xddot,
                        const CraneParams& params);

/// Power samples along one run, plus the discrete engine work done by the
/// boundary velocity jumps (trolley kinetic energy, never a delta quadrature).
struct PowerTrace {
    CraneParams params;
    TransportTask task;
    std::vector<double> grid;
    std::vector<double> P_total;
    std::vector<double> P_load;
    std::vector<double> E_load;
    std::vector<double> E_total;
    double jump_work_start = 0.0;
    double jump_work_end = 0.0;
};

PowerTrace power_trace(const SimTrace& trace, const TrolleyProtocol& proto,
                       const CraneParams& params);

/// Signed integral split of a sampled function: composite Simpson on panels
/// of uniform sign, trapezoid pieces with linearly interpolated zero
/// crossings inside sign-changing panels.
struct SignedSplit {
    double positive = 0.0;
    double negative = 0.0;
};

SignedSplit signed_split_integral(const std::vector<double>& t, const std::vector<double>& f);

/// eta-parameterized consumption report, E = E_plus + eta * E_minus, with the
/// analytic lower bounds of the same configuration alongside.
struct EnergyReport {
    double e_plus;        ///< integral of max(P_tot, 0), >= 0 [J]
    double e_minus;       ///< integral of min(P_tot, 0), <= 0 [J]
    double eta;           ///< braking parameter in [-1, 1]
    double e_total;       ///< e_plus + eta * e_minus [J]
    double bound_simple;  ///< gamma d^2 / t_f [J]
    double bound_tight;   ///< minimal consumption bound [J]
};

EnergyReport consumption(const PowerTrace& trace, double eta);

/// Mean-value-theorem bounds on the peak of |P_tot|, one per dominant term,
/// plus the validity ratio sqrt(2 E0/m)/(w d) qualifying the short-time
/// load bound.
struct PeakPowerBounds {
    double trolley_term;     ///< M d^2 / t_f^3 [W]
    double friction_term;    ///< gamma d^2 / t_f^2 [W]
    double load_long_time;   ///< m d^2 / t_f^3 [W]
    double load_short_time;  ///< 4 m d^2 / (w^2 t_f^5) [W]
    double validity_ratio;   ///< sqrt(2 E0 / m) / (w d)
};

PeakPowerBounds peak_power_bounds(const CraneParams& params, const TransportTask& task,
                                  double E0 = 0.0);

}  // namespace crane
