#pragma once

#include <array>
#include <functional>

#include "crane/params.hpp"
#include "crane/protocol.hpp"

namespace crane {

/// Costates of the minimal-consumption problem,
///   k1 = c1 cos(wt) + w c2 sin(wt),  k2 = c2 cos(wt) - (c1/w) sin(wt),
/// solving k1' = w^2 k2, k2' = -k1.
struct Costates {
    double k1;
    double k2;
};

Costates costates(double c1, double c2, double omega, double t);

/// Pontryagin-optimal trolley protocol together with the reference load
/// trajectory xi(t) it transports.
struct OCTSolution {
    double c1, c2, c3, c4;  ///< trajectory constants
    double k0;              ///< cost multiplier, fixed to -1
    TrolleyProtocol protocol;
    std::function<double(double)> xi, xi_dot, xi_ddot;
};

/// Denominator D = -4 + (w t_f)^2 + 4 cos(w t_f) + w t_f sin(w t_f) shared by
/// the optimal trajectory and the tight bound.
double oct_denominator(const CraneParams& params, const TransportTask& task);

/// Constants c1..c4 from the 4x4 linear system of xi's usable boundary
/// conditions (u(0)=0, u(t_f)=d, xi(t_f)=d, xidot(t_f)=0) after substituting
/// the stationarity condition for u(t). Cross-checks the closed forms.
std::array<double, 4> solve_trajectory_constants(const CraneParams& params,
                                                 const TransportTask& task);

/// Closed-form optimal protocol. The trolley trajectory carries velocity
/// jumps at both edges (Dirac impulses in the acceleration, bookkept as
/// jump_start/jump_end, never integrated numerically).
OCTSolution optimal_protocol(const CraneParams& params, const TransportTask& task);

/// Consumption of the optimal protocol at eta=1: the tight lower bound
/// gamma d^2 / [t_f + 4(cos(w t_f)-1) / (w(w t_f + sin(w t_f)))] that any
/// other protocol's consumption dominates.
double minimal_consumption_bound(const CraneParams& params, const TransportTask& task);

/// gamma d^2 / t_f, the mean-value bound valid for every protocol.
double simple_lower_bound(const CraneParams& params, const TransportTask& task);

/// Short-time expansion of the tight bound, gamma * 720 d^2 / (w^4 t_f^5).
/// Meaningful for w t_f << 1; returns the formula value regardless.
double short_time_asymptote(const CraneParams& params, const TransportTask& task);

/// Self-consistency residuals of a solution against the maximum principle.
struct PmpReport {
    double hc_value;      ///< control Hamiltonian at t=0+
    double hc_constancy;  ///< max |H_c(t) - H_c(0+)|, scaled
    double stationarity;  ///< max |k2 w^2 - 2 k0 uddot|, scaled
    double endpoint;      ///< max xi boundary-condition residual, scaled
};

PmpReport verify_pmp(const OCTSolution& sol, const CraneParams& params, const TransportTask& task,
                     int samples = 2001);

}  // namespace crane
