#include "crane/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace crane {

LoadState ScenarioConfig::initial_state(const CraneParams& p) const {
    if (use_angle_ic) return LoadState::from_angle(theta0_deg * M_PI / 180.0, 0.0, p);
    return LoadState::from_deviation(q0, qdot0, p);
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& value, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + value + "'");
    }
    if (used != value.size()) throw ConfigError(where + ": trailing junk in '" + value + "'");
    return v;
}

int parse_int(const std::string& value, const std::string& where) {
    const double v = parse_number(value, where);
    if (v != std::floor(v)) throw ConfigError(where + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& value, const std::string& where) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(where + ": empty element in list");
        out.push_back(parse_number(item, where));
    }
    return out;
}

int default_steps() {
    const char* env = std::getenv("STA_CRANE_STEPS");
    if (env == nullptr || *env == '\0') return kDefaultSteps;
    const int v = parse_int(env, "STA_CRANE_STEPS");
    if (v < kMinSteps) throw ConfigError("STA_CRANE_STEPS: below the minimum of 1000");
    return v;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text, const std::string& name) {
    ScenarioConfig cfg;
    cfg.steps = default_steps();

    std::map<std::string, std::string> kv;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string where = name + ":" + std::to_string(lineno);
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
        kv[key] = where;  // remember location for later diagnostics

        if (key == "m") cfg.m = parse_number(value, where);
        else if (key == "M") cfg.M = parse_number(value, where);
        else if (key == "l") cfg.l = parse_number(value, where);
        else if (key == "gamma") cfg.gamma = parse_number(value, where);
        else if (key == "g") cfg.g = parse_number(value, where);
        else if (key == "d") cfg.d = parse_number(value, where);
        else if (key == "t_f") cfg.t_f = parse_number(value, where);
        else if (key == "eta") cfg.eta = parse_number(value, where);
        else if (key == "q0") cfg.q0 = parse_number(value, where);
        else if (key == "qdot0") cfg.qdot0 = parse_number(value, where);
        else if (key == "theta0_deg") {
            cfg.theta0_deg = parse_number(value, where);
            cfg.use_angle_ic = true;
        } else if (key == "model") {
            if (value == "exact") cfg.model = ModelKind::Exact;
            else if (value == "harmonic") cfg.model = ModelKind::Harmonic;
            else throw ConfigError(where + ": model must be 'exact' or 'harmonic'");
        } else if (key == "protocol") {
            if (value == "sta") cfg.protocol = ProtocolChoice::STA;
            else if (value == "oct") cfg.protocol = ProtocolChoice::OCT;
            else throw ConfigError(where + ": protocol must be 'sta' or 'oct'");
        } else if (key == "free_values") {
            cfg.free_values = parse_list(value, where);
        } else if (key == "targets_deg") {
            cfg.targets_deg = parse_list(value, where);
        } else if (key == "steps") {
            cfg.steps = parse_int(value, where);
        } else if (key == "init_scale") {
            cfg.init_scale = parse_number(value, where);
        } else if (key == "sweep_param" || key == "sweep2_param") {
            auto& axis = (key[5] == '2') ? cfg.sweep2 : cfg.sweep;
            if (!axis) axis = SweepAxis{};
            axis->param = value;
        } else if (key == "sweep_min" || key == "sweep_max" || key == "sweep_count" ||
                   key == "sweep2_min" || key == "sweep2_max" || key == "sweep2_count") {
            auto& axis = (key[5] == '2') ? cfg.sweep2 : cfg.sweep;
            if (!axis) axis = SweepAxis{};
            if (key.ends_with("min")) axis->lo = parse_number(value, where);
            else if (key.ends_with("max")) axis->hi = parse_number(value, where);
            else axis->count = parse_int(value, where);
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }

    for (const char* req : {"m", "l", "d", "t_f"})
        if (!seen.count(req))
            throw ConfigError(name + ": missing required key '" + std::string(req) + "'");
    if (cfg.use_angle_ic && (seen.count("q0") || seen.count("qdot0")))
        throw ConfigError(name + ": theta0_deg conflicts with q0/qdot0");
    if (!(cfg.eta >= -1.0 && cfg.eta <= 1.0))
        throw ConfigError(kv.count("eta") ? kv["eta"] + ": eta must lie in [-1, 1]"
                                          : name + ": eta must lie in [-1, 1]");
    if (cfg.steps < kMinSteps)
        throw ConfigError(name + ": steps below the minimum of 1000");
    if (!cfg.free_values.empty() && cfg.protocol == ProtocolChoice::OCT)
        throw ConfigError(name + ": free_values applies to the sta protocol only");
    for (const auto& axis : {cfg.sweep, cfg.sweep2}) {
        if (!axis) continue;
        if (axis->param.empty()) throw ConfigError(name + ": sweep axis missing its param");
        if (axis->count < 1) throw ConfigError(name + ": sweep count must be >= 1");
        if (axis->count == 1 && axis->lo != axis->hi)
            throw ConfigError(name + ": single-point sweep must have min = max");
    }

    try {
        cfg.crane_params();
        cfg.transport_task();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(name + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace crane
