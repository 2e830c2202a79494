#include "crane/power.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crane/dynamics.hpp"
#include "crane/oct.hpp"

namespace crane {

double total_power_harmonic(double q, double xdot, double xddot, const CraneParams& params) {
    return (params.M * xddot - params.m * q * params.omega2() + params.gamma * xdot) * xdot;
}

double total_power_exact(double F_a, double xdot) { return F_a * xdot; }

double load_power(double q, const CraneParams& params, double xdot) {
    return -params.m * q * params.omega2() * xdot;
}

double load_power_exact(double theta, double theta_dot, double xdot, double xddot,
                        const CraneParams& params) {
    // dE/dt of load_energy_exact along the exact pendulum dynamics.
    return -params.m * xdot * std::sin(theta) *
           (params.g * std::cos(theta) + params.l * theta_dot * theta_dot -
            xddot * std::sin(theta));
}

PowerTrace power_trace(const SimTrace& trace, const TrolleyProtocol& proto,
                       const CraneParams& params) {
    PowerTrace pt{params, proto.task, {}, {}, {}, {}, {}, 0.0, 0.0};
    const std::size_t n = trace.size();
    pt.grid = trace.t;
    pt.E_load = trace.E_load;
    pt.E_total.resize(n);
    pt.P_total.resize(n);
    pt.P_load.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        // recomputed with these params: the load trajectory is M-independent,
        // so a trace integrated once can be re-dressed for a different trolley
        pt.E_total[i] = trace.E_load[i] + 0.5 * params.M * trace.xdot[i] * trace.xdot[i];
        if (trace.model == ModelKind::Exact) {
            const double thdd =
                exact_angular_acceleration(trace.theta[i], trace.xddot[i], params);
            const double fa = required_force(trace.theta[i], trace.theta_dot[i], thdd,
                                             trace.xdot[i], trace.xddot[i], params);
            pt.P_total[i] = total_power_exact(fa, trace.xdot[i]);
            pt.P_load[i] = load_power_exact(trace.theta[i], trace.theta_dot[i], trace.xdot[i],
                                            trace.xddot[i], params);
        } else {
            pt.P_total[i] = total_power_harmonic(trace.q[i], trace.xdot[i], trace.xddot[i],
                                                 params);
            pt.P_load[i] = load_power(trace.q[i], params, trace.xdot[i]);
        }
    }

    // Discrete engine work of the boundary jumps: trolley kinetic energy
    // before vs after each velocity step.
    const double v0_minus = trace.xdot_pre_start;
    const double v0_plus = proto.xdot(0.0);
    const double vf_minus = proto.xdot(proto.task.t_f);
    const double vf_plus = trace.xdot_post_end;
    pt.jump_work_start = 0.5 * params.M * (v0_plus * v0_plus - v0_minus * v0_minus);
    pt.jump_work_end = 0.5 * params.M * (vf_plus * vf_plus - vf_minus * vf_minus);
    return pt;
}

namespace {

// Trapezoid on one panel, splitting at the interpolated zero crossing when
// the endpoint signs differ.
void split_panel(double ta, double tb, double fa, double fb, SignedSplit& acc) {
    if (fa * fb < 0.0) {
        const double tc = ta + (tb - ta) * fa / (fa - fb);
        const double area_a = 0.5 * fa * (tc - ta);
        const double area_b = 0.5 * fb * (tb - tc);
        (fa > 0.0 ? acc.positive : acc.negative) += area_a;
        (fb > 0.0 ? acc.positive : acc.negative) += area_b;
        return;
    }
    const double area = 0.5 * (fa + fb) * (tb - ta);
    (area >= 0.0 ? acc.positive : acc.negative) += area;
}

}  // namespace

SignedSplit signed_split_integral(const std::vector<double>& t, const std::vector<double>& f) {
    if (t.size() != f.size()) throw std::invalid_argument("signed_split_integral: size mismatch");
    if (t.size() < 2) return {};

    SignedSplit acc;
    // Simpson over consecutive sample pairs while the sign is uniform;
    // fall back to crossing-split trapezoids on mixed-sign panels.
    const std::size_t last = t.size() - 1;
    std::size_t i = 0;
    while (i + 2 <= last) {
        const double f0 = f[i], f1 = f[i + 1], f2 = f[i + 2];
        const bool all_pos = f0 >= 0.0 && f1 >= 0.0 && f2 >= 0.0;
        const bool all_neg = f0 <= 0.0 && f1 <= 0.0 && f2 <= 0.0;
        if (all_pos || all_neg) {
            const double simpson = (t[i + 2] - t[i]) / 6.0 * (f0 + 4.0 * f1 + f2);
            (all_pos ? acc.positive : acc.negative) += simpson;
        } else {
            split_panel(t[i], t[i + 1], f0, f1, acc);
            split_panel(t[i + 1], t[i + 2], f1, f2, acc);
        }
        i += 2;
    }
    if (i + 1 <= last) split_panel(t[i], t[i + 1], f[i], f[i + 1], acc);
    return acc;
}

EnergyReport consumption(const PowerTrace& trace, double eta) {
    if (!(eta >= -1.0 && eta <= 1.0))
        throw std::domain_error("consumption: eta must lie in [-1, 1]");

    SignedSplit split = signed_split_integral(trace.grid, trace.P_total);
    for (double w : {trace.jump_work_start, trace.jump_work_end})
        (w >= 0.0 ? split.positive : split.negative) += w;

    EnergyReport rep;
    rep.e_plus = split.positive;
    rep.e_minus = split.negative;
    rep.eta = eta;
    rep.e_total = split.positive + eta * split.negative;
    rep.bound_simple = simple_lower_bound(trace.params, trace.task);
    rep.bound_tight = minimal_consumption_bound(trace.params, trace.task);
    return rep;
}

PeakPowerBounds peak_power_bounds(const CraneParams& params, const TransportTask& task,
                                  double E0) {
    const double d = task.d, t_f = task.t_f, w = params.omega;
    PeakPowerBounds b;
    b.trolley_term = params.M * d * d / (t_f * t_f * t_f);
    b.friction_term = params.gamma * d * d / (t_f * t_f);
    b.load_long_time = params.m * d * d / (t_f * t_f * t_f);
    b.load_short_time = 4.0 * params.m * d * d / (w * w * std::pow(t_f, 5));
    b.validity_ratio = (d != 0.0) ? std::sqrt(2.0 * E0 / params.m) / (w * std::abs(d))
                                  : std::numeric_limits<double>::infinity();
    return b;
}

}  // namespace crane
