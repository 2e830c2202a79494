#pragma once

#include <vector>

#include "crane/params.hpp"

namespace crane {

/// Kinetic energy of the constant-velocity reference transport,
/// K0 = m d^2 / (2 t_f^2). Nondimensionalizes the excitation.
double reference_kinetic_energy(const CraneParams& params, const TransportTask& task);

struct ExcitationResult {
    double theta_i_deg = 0.0;  ///< initial angle at the interface [deg]
    double dE = 0.0;           ///< |E(t_f) - E(0)| of the load, exact model [J]
    double dE_scaled = 0.0;    ///< dE / K0 when K0 > 0, plain dE otherwise
    double K0 = 0.0;           ///< reference kinetic energy [J]
    bool regime_ok = true;     ///< false when the run left the model's validity range
};

/// Exact-pendulum final excitation of an STA protocol designed with the given
/// trailing free coefficients (scaled-tau basis), load released at rest from
/// theta_i. A regime violation during the run is reported as infinite
/// excitation instead of an error, so optimizers can treat it as a penalty.
ExcitationResult final_excitation(const std::vector<double>& free_values, double theta_i_deg,
                                  const CraneParams& params, const TransportTask& task,
                                  int steps = 4000);

struct ExcitationOptimum {
    std::vector<double> free_values;  ///< scaled-tau basis
    double objective = 0.0;           ///< sum of dE_scaled over the targets
    int iterations = 0;
    bool converged = false;
};

/// Minimize the summed scaled excitation over the target angles with one free
/// ansatz coefficient per target. Deterministic: a coarse per-axis magnitude
/// ladder seeds a Nelder-Mead simplex of relative size init_scale (default
/// 0.25 when passed as 0).
ExcitationOptimum optimize_excitation(const std::vector<double>& theta_targets_deg,
                                      const CraneParams& params, const TransportTask& task,
                                      int n_free = -1, double init_scale = 0.0, int steps = 4000);

/// One final_excitation per grid angle, with per-point regime flags.
std::vector<ExcitationResult> excitation_scan(const std::vector<double>& free_values,
                                              const std::vector<double>& theta_grid_deg,
                                              const CraneParams& params, const TransportTask& task,
                                              int steps = 4000);

}  // namespace crane
