#pragma once

#include <cstddef>
#include <vector>

#include "crane/params.hpp"
#include "crane/protocol.hpp"

namespace crane {

enum class ModelKind { Exact, Harmonic };

inline constexpr int kDefaultSteps = 20000;
inline constexpr int kMinSteps = 1000;

/// Time-sampled run of one protocol. Rows live on the uniform RK4 grid over
/// [0, t_f]; the boundary-jump states just outside the grid (t=0- before the
/// start jump, t=t_f+ after the end jump) are kept separately.
struct SimTrace {
    ModelKind model = ModelKind::Harmonic;

    std::vector<double> t;
    std::vector<double> x, xdot, xddot;
    std::vector<double> theta, theta_dot;
    std::vector<double> q, q_dot;
    std::vector<double> E_load;   ///< load mechanical energy [J]
    std::vector<double> E_total;  ///< E_load + M xdot^2 / 2 [J]

    LoadState initial_pre_jump;  ///< state at t=0-, trolley still parked
    LoadState final_post_jump;   ///< state at t=t_f+, trolley parked again
    double xdot_pre_start = 0.0;
    double xdot_post_end = 0.0;
    double E_pre_start = 0.0;  ///< load energy at t=0-
    double E_post_end = 0.0;   ///< load energy at t=t_f+

    std::size_t size() const { return t.size(); }
};

/// Propagate the load under a trolley protocol with fixed-step classical RK4
/// on a uniform grid of `steps` intervals.
///
/// `init` is the state at t=0- (before any boundary jump). Velocity jumps in
/// the protocol are applied as discrete updates that keep the lab-frame load
/// velocity Xdot continuous: the deviation velocity absorbs -delta_v. Steps
/// below kMinSteps are refused outright; accuracy contracts elsewhere assume
/// at least that resolution.
SimTrace integrate(const TrolleyProtocol& proto, const CraneParams& params,
                   const LoadState& init, ModelKind model, int steps = kDefaultSteps);

/// load_energy of the model the trace was run with, for one row.
double trace_load_energy(const SimTrace& tr, std::size_t i, const CraneParams& params);

}  // namespace crane
