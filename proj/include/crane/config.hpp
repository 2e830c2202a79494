#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crane/integrator.hpp"
#include "crane/params.hpp"

namespace crane {

/// Raised on malformed or inconsistent configuration input; the message
/// carries the offending line or key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ProtocolChoice { STA, OCT };

struct SweepAxis {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;
};

/// One scenario parsed from a key = value config file. Flat namespace, SI
/// units, angles in degrees via *_deg keys. Unknown and duplicate keys are
/// rejected with their line number.
struct ScenarioConfig {
    double m = 1.0, M = 0.0, l = 1.0, gamma = 0.0, g = 9.8;
    double d = 0.0, t_f = 1.0;
    double eta = 1.0;
    double q0 = 0.0, qdot0 = 0.0, theta0_deg = 0.0;
    bool use_angle_ic = false;  ///< initial condition given as theta0_deg
    ModelKind model = ModelKind::Harmonic;
    ProtocolChoice protocol = ProtocolChoice::STA;
    std::vector<double> free_values;
    int steps = kDefaultSteps;
    std::optional<SweepAxis> sweep, sweep2;
    std::vector<double> targets_deg;
    double init_scale = 0.0;

    CraneParams crane_params() const { return CraneParams(m, M, l, gamma, g); }
    TransportTask transport_task() const { return TransportTask(d, t_f); }
    LoadState initial_state(const CraneParams& p) const;
};

/// Parse config text. `name` labels diagnostics (usually the file path).
/// Required keys: m, l, d, t_f. The STA_CRANE_STEPS environment variable
/// replaces the built-in default step count; an explicit steps key still
/// wins over it.
ScenarioConfig parse_config_text(const std::string& text, const std::string& name);

ScenarioConfig parse_config_file(const std::string& path);

}  // namespace crane
