#pragma once

#include <functional>
#include <utility>

#include "crane/params.hpp"

namespace crane {

enum class ProtocolKind { PolynomialSTA, OptimalOCT, Custom };

/// An evaluable trolley trajectory x(t) with its first two derivatives.
///
/// The evaluators cover the open interval (0, t_f); at t=0 and t=t_f they
/// return the one-sided interior limits (0+ / t_f-), and outside [0, t_f]
/// the trajectory is held at its clamped rest values. Instantaneous trolley
/// velocity jumps at the edges are carried separately in jump_start and
/// jump_end, never inside the acceleration evaluator.
struct TrolleyProtocol {
    ProtocolKind kind = ProtocolKind::Custom;
    TransportTask task{0.0, 1.0};
    double jump_start = 0.0;  ///< trolley velocity jump at t=0 [m/s]
    double jump_end = 0.0;    ///< trolley velocity jump at t=t_f [m/s]

    std::function<double(double)> position;
    std::function<double(double)> velocity;
    std::function<double(double)> acceleration;

    double x(double t) const { return position(t); }
    double xdot(double t) const { return velocity(t); }
    double xddot(double t) const { return acceleration(t); }
};

/// A protocol that keeps the trolley parked at x=0 (useful as a free-pendulum
/// baseline and in tests).
inline TrolleyProtocol stationary_protocol(double t_f) {
    TrolleyProtocol p;
    p.kind = ProtocolKind::Custom;
    p.task = TransportTask{0.0, t_f};
    p.position = [](double) { return 0.0; };
    p.velocity = [](double) { return 0.0; };
    p.acceleration = [](double) { return 0.0; };
    return p;
}

/// Wrap interior closed-form evaluators with the clamped extension
/// (x=0 before the process, x=d after it).
inline TrolleyProtocol make_clamped_protocol(ProtocolKind kind, TransportTask task,
                                             std::function<double(double)> x,
                                             std::function<double(double)> xd,
                                             std::function<double(double)> xdd,
                                             double jump_start = 0.0, double jump_end = 0.0) {
    TrolleyProtocol p;
    p.kind = kind;
    p.task = task;
    p.jump_start = jump_start;
    p.jump_end = jump_end;
    const double d = task.d, t_f = task.t_f;
    p.position = [x = std::move(x), d, t_f](double t) {
        if (t < 0.0) return 0.0;
        if (t > t_f) return d;
        return x(t);
    };
    p.velocity = [xd = std::move(xd), t_f](double t) {
        if (t < 0.0 || t > t_f) return 0.0;
        return xd(t);
    };
    p.acceleration = [xdd = std::move(xdd), t_f](double t) {
        if (t < 0.0 || t > t_f) return 0.0;
        return xdd(t);
    };
    return p;
}

}  // namespace crane
