#include "crane/excitation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crane/integrator.hpp"
#include "crane/nelder_mead.hpp"
#include "crane/sta.hpp"

namespace crane {

double reference_kinetic_energy(const CraneParams& params, const TransportTask& task) {
    return 0.5 * params.m * task.d * task.d / (task.t_f * task.t_f);
}

ExcitationResult final_excitation(const std::vector<double>& free_values, double theta_i_deg,
                                  const CraneParams& params, const TransportTask& task,
                                  int steps) {
    if (!(std::abs(theta_i_deg) < 90.0))
        throw std::invalid_argument("final_excitation: |theta_i| must be below 90 degrees");

    ExcitationResult res;
    res.theta_i_deg = theta_i_deg;
    res.K0 = reference_kinetic_energy(params, task);

    const double theta_i = theta_i_deg * M_PI / 180.0;
    const auto proto = trolley_from_alpha(design_alpha(params, task, free_values), params, task);
    const auto init = LoadState::from_angle(theta_i, 0.0, params);
    try {
        const SimTrace tr = integrate(proto, params, init, ModelKind::Exact, steps);
        res.dE = std::abs(tr.E_post_end - tr.E_pre_start);
        res.regime_ok = true;
    } catch (const RegimeError&) {
        res.dE = std::numeric_limits<double>::infinity();
        res.regime_ok = false;
    }
    res.dE_scaled = (res.K0 > 0.0) ? res.dE / res.K0 : res.dE;
    return res;
}

namespace {

double scan_objective(const std::vector<double>& free_values,
                      const std::vector<double>& targets_deg, const CraneParams& params,
                      const TransportTask& task, int steps) {
    double sum = 0.0;
    for (double th : targets_deg)
        sum += final_excitation(free_values, th, params, task, steps).dE_scaled;
    return sum;
}

}  // namespace

ExcitationOptimum optimize_excitation(const std::vector<double>& theta_targets_deg,
                                      const CraneParams& params, const TransportTask& task,
                                      int n_free, double init_scale, int steps) {
    const int n = static_cast<int>(theta_targets_deg.size());
    if (n_free >= 0 && n_free != n)
        throw std::invalid_argument(
            "optimize_excitation: one free coefficient per target angle");

    ExcitationOptimum best;
    if (n == 0) {
        best.converged = true;
        best.objective = 0.0;
        return best;
    }

    auto objective = [&](const std::vector<double>& fv) {
        return scan_objective(fv, theta_targets_deg, params, task, steps);
    };

    // Coarse magnitude ladder, one axis at a time, to land the simplex near
    // the right order of magnitude before polishing.
    std::vector<double> seed(n, 0.0);
    for (int axis = 0; axis < n; ++axis) {
        double best_val = std::numeric_limits<double>::infinity();
        double best_coef = 0.0;
        for (double mag : {0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0}) {
            for (double sign : {1.0, -1.0}) {
                if (mag == 0.0 && sign < 0.0) continue;
                seed[axis] = sign * mag;
                const double val = objective(seed);
                if (val < best_val) {
                    best_val = val;
                    best_coef = seed[axis];
                }
            }
        }
        seed[axis] = best_coef;
    }

    const double rel = (init_scale > 0.0) ? init_scale : 0.25;
    std::vector<double> step(n);
    for (int i = 0; i < n; ++i) step[i] = rel * std::max(1.0, std::abs(seed[i]));

    const NelderMeadResult nm = nelder_mead(objective, seed, step);
    best.free_values = nm.x;
    best.objective = nm.fval;
    best.iterations = nm.iterations;
    best.converged = nm.converged;
    return best;
}

std::vector<ExcitationResult> excitation_scan(const std::vector<double>& free_values,
                                              const std::vector<double>& theta_grid_deg,
                                              const CraneParams& params,
                                              const TransportTask& task, int steps) {
    std::vector<ExcitationResult> out;
    out.reserve(theta_grid_deg.size());
    for (double th : theta_grid_deg)
        out.push_back(final_excitation(free_values, th, params, task, steps));
    return out;
}

}  // namespace crane
