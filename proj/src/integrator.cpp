#include "crane/integrator.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crane/dynamics.hpp"

namespace crane {

namespace {

using State = std::array<double, 2>;  // exact: (theta, theta_dot); harmonic: (q, q_dot)

State rhs(const State& y, double t, const TrolleyProtocol& proto, const CraneParams& p,
          ModelKind model) {
    const double xddot = proto.xddot(t);
    if (model == ModelKind::Exact)
        return {y[1], exact_angular_acceleration(y[0], xddot, p)};
    return {y[1], harmonic_acceleration(y[0], xddot, p)};
}

State rk4_step(const State& y, double t, double h, const TrolleyProtocol& proto,
               const CraneParams& p, ModelKind model) {
    const State k1 = rhs(y, t, proto, p, model);
    const State k2 = rhs({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]}, t + 0.5 * h, proto, p,
                         model);
    const State k3 = rhs({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]}, t + 0.5 * h, proto, p,
                         model);
    const State k4 = rhs({y[0] + h * k3[0], y[1] + h * k3[1]}, t + h, proto, p, model);
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

// Deviation velocity absorbs -delta_v so the lab-frame load velocity Xdot
// stays continuous across a trolley jump.
void apply_jump(State& y, double delta_v, const CraneParams& p, ModelKind model) {
    if (delta_v == 0.0) return;
    if (model == ModelKind::Harmonic) {
        y[1] -= delta_v;
        return;
    }
    if (!(std::abs(y[0]) < M_PI / 2.0))
        throw RegimeError("boundary jump outside the exact model's validity range");
    y[1] -= delta_v / (p.l * std::cos(y[0]));
}

}  // namespace

SimTrace integrate(const TrolleyProtocol& proto, const CraneParams& params, const LoadState& init,
                   ModelKind model, int steps) {
    if (steps < kMinSteps)
        throw std::invalid_argument("integrate: step count below the accuracy floor");

    const double t_f = proto.task.t_f;
    const int n = steps;

    SimTrace tr;
    tr.model = model;
    tr.t.resize(n + 1);
    tr.x.resize(n + 1);
    tr.xdot.resize(n + 1);
    tr.xddot.resize(n + 1);
    tr.theta.resize(n + 1);
    tr.theta_dot.resize(n + 1);
    tr.q.resize(n + 1);
    tr.q_dot.resize(n + 1);
    tr.E_load.resize(n + 1);
    tr.E_total.resize(n + 1);

    tr.initial_pre_jump = init;
    tr.xdot_pre_start = proto.xdot(0.0) - proto.jump_start;
    tr.E_pre_start = (model == ModelKind::Exact)
                         ? load_energy_exact(init.theta, init.theta_dot, tr.xdot_pre_start, params)
                         : load_energy_harmonic(init.q, init.q_dot, tr.xdot_pre_start, params);

    State y = (model == ModelKind::Exact) ? State{init.theta, init.theta_dot}
                                          : State{init.q, init.q_dot};
    apply_jump(y, proto.jump_start, params, model);

    const double h = t_f / n;
    for (int i = 0; i <= n; ++i) {
        const double t = t_f * static_cast<double>(i) / n;
        tr.t[i] = t;
        tr.x[i] = proto.x(t);
        tr.xdot[i] = proto.xdot(t);
        tr.xddot[i] = proto.xddot(t);
        if (model == ModelKind::Exact) {
            tr.theta[i] = y[0];
            tr.theta_dot[i] = y[1];
            tr.q[i] = params.l * std::sin(y[0]);
            tr.q_dot[i] = params.l * y[1] * std::cos(y[0]);
            tr.E_load[i] = load_energy_exact(y[0], y[1], tr.xdot[i], params);
        } else {
            tr.q[i] = y[0];
            tr.q_dot[i] = y[1];
            if (std::abs(y[0]) < params.l) {
                tr.theta[i] = std::asin(y[0] / params.l);
                tr.theta_dot[i] = y[1] / (params.l * std::cos(tr.theta[i]));
            } else {
                tr.theta[i] = std::numeric_limits<double>::quiet_NaN();
                tr.theta_dot[i] = std::numeric_limits<double>::quiet_NaN();
            }
            tr.E_load[i] = load_energy_harmonic(y[0], y[1], tr.xdot[i], params);
        }
        tr.E_total[i] = tr.E_load[i] + 0.5 * params.M * tr.xdot[i] * tr.xdot[i];
        if (i < n) y = rk4_step(y, t, h, proto, params, model);
    }

    apply_jump(y, proto.jump_end, params, model);
    tr.xdot_post_end = proto.xdot(t_f) + proto.jump_end;
    const double x_end = proto.x(t_f);
    if (model == ModelKind::Exact) {
        tr.final_post_jump = LoadState::from_angle(y[0], y[1], params, t_f, x_end);
        tr.E_post_end = load_energy_exact(y[0], y[1], tr.xdot_post_end, params);
    } else {
        tr.final_post_jump = LoadState::from_deviation(y[0], y[1], params, t_f, x_end);
        tr.E_post_end = load_energy_harmonic(y[0], y[1], tr.xdot_post_end, params);
    }
    return tr;
}

double trace_load_energy(const SimTrace& tr, std::size_t i, const CraneParams& params) {
    if (tr.model == ModelKind::Exact)
        return load_energy_exact(tr.theta[i], tr.theta_dot[i], tr.xdot[i], params);
    return load_energy_harmonic(tr.q[i], tr.q_dot[i], tr.xdot[i], params);
}

}  // namespace crane
