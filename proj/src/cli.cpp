#include "crane/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "crane/config.hpp"
#include "crane/csv.hpp"
#include "crane/dynamics.hpp"
#include "crane/excitation.hpp"
#include "crane/integrator.hpp"
#include "crane/oct.hpp"
#include "crane/power.hpp"
#include "crane/sta.hpp"

namespace crane {

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string plot_script;
};

void add_common(CLI::App* cmd, CommonArgs& args, const std::string& default_out) {
    args.out_path = default_out;
    cmd->add_option("config", args.config_path, "scenario config file")->required();
    cmd->add_option("-o,--out", args.out_path, "output CSV path")->capture_default_str();
    cmd->add_option("--plot-script", args.plot_script,
                    "also emit a gnuplot script that plots the CSV");
}

void emit_plot_script(const CommonArgs& args, const std::vector<std::string>& header) {
    if (args.plot_script.empty()) return;
    std::ofstream out(args.plot_script);
    if (!out) throw std::runtime_error(args.plot_script + ": cannot open for writing");
    out << "# gnuplot script, generated alongside " << args.out_path << "\n";
    out << "set datafile separator \",\"\n";
    out << "set key autotitle columnhead\n";
    out << "set xlabel \"" << header[0] << "\"\n";
    out << "plot";
    for (std::size_t col = 2; col <= header.size(); ++col)
        out << (col > 2 ? ", \\\n     " : " ") << "\"" << args.out_path << "\" using 1:" << col
            << " with lines";
    out << "\n";
}

void emit_csv(const CommonArgs& args, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows) {
    write_csv_file(args.out_path, header, rows);
    emit_plot_script(args, header);
}

TrolleyProtocol build_protocol(const ScenarioConfig& cfg, const CraneParams& params,
                               const TransportTask& task) {
    if (cfg.protocol == ProtocolChoice::OCT) return optimal_protocol(params, task).protocol;
    return trolley_from_alpha(design_alpha(params, task, cfg.free_values), params, task);
}

// Pure per-index work items run concurrently; the first exception wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = (count == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return out;
}

const std::vector<std::string> kTraceHeader = {"t",     "x",        "xdot", "xddot",
                                               "theta", "thetadot", "q",    "qdot",
                                               "E_load", "E_total", "P_load", "P_total"};

std::vector<std::vector<double>> trace_rows(const SimTrace& tr, const PowerTrace& pt) {
    std::vector<std::vector<double>> rows;
    rows.reserve(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i)
        rows.push_back({tr.t[i], tr.x[i], tr.xdot[i], tr.xddot[i], tr.theta[i], tr.theta_dot[i],
                        tr.q[i], tr.q_dot[i], tr.E_load[i], pt.E_total[i], pt.P_load[i],
                        pt.P_total[i]});
    return rows;
}

const std::vector<std::string> kEnergyMapHeader = {"M",       "gamma",   "eta",
                                                   "E_plus",  "E_minus", "E_total",
                                                   "bound_simple", "bound_tight"};

const std::vector<std::string> kScanHeader = {"theta_i_deg", "dE", "dE_over_K0"};

std::string fmt(double v) { return csv_number(v); }

void print_free_values(const char* label, const std::vector<double>& scaled, double t_f) {
    std::printf("%s (tau basis):", label);
    for (double v : scaled) std::printf(" %s", fmt(v).c_str());
    std::printf("\n%s (physical t):", label);
    double pw = std::pow(t_f, 8.0);
    for (std::size_t j = 0; j < scaled.size(); ++j, pw *= t_f)
        std::printf(" %s", fmt(scaled[j] / pw).c_str());
    std::printf("\n");
}

int cmd_design(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    if (cfg.protocol != ProtocolChoice::STA)
        throw ConfigError(args.config_path + ": design requires protocol = sta");
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const PolynomialAnsatz ansatz = design_alpha(params, task, cfg.free_values);
    const TrolleyProtocol proto = trolley_from_alpha(ansatz, params, task);

    std::vector<std::vector<double>> rows;
    rows.reserve(cfg.steps + 1);
    for (int i = 0; i <= cfg.steps; ++i) {
        const double t = task.t_f * static_cast<double>(i) / cfg.steps;
        rows.push_back({t, proto.x(t), proto.xdot(t), proto.xddot(t), ansatz.alpha(t),
                        ansatz.alpha_dot(t), ansatz.alpha_ddot(t)});
    }
    emit_csv(args, {"t", "x", "xdot", "xddot", "alpha", "alphadot", "alphaddot"}, rows);

    std::printf("designed alpha(t): degree %d, %d free coefficient(s)\n", ansatz.degree(),
                ansatz.n_free());
    std::printf("scaled coefficients A_i (alpha = sum A_i (t/t_f)^i):");
    for (double c : ansatz.scaled) std::printf(" %s", fmt(c).c_str());
    std::printf("\nendpoint check: x(t_f)-d = %s, xdot(t_f) = %s, xddot(t_f) = %s\n",
                fmt(proto.x(task.t_f) - task.d).c_str(), fmt(proto.xdot(task.t_f)).c_str(),
                fmt(proto.xddot(task.t_f)).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const TrolleyProtocol proto = build_protocol(cfg, params, task);
    const SimTrace tr = integrate(proto, params, cfg.initial_state(params), cfg.model, cfg.steps);
    const PowerTrace pt = power_trace(tr, proto, params);
    emit_csv(args, kTraceHeader, trace_rows(tr, pt));

    std::printf("model: %s, protocol: %s, steps: %d\n",
                cfg.model == ModelKind::Exact ? "exact" : "harmonic",
                cfg.protocol == ProtocolChoice::OCT ? "oct" : "sta", cfg.steps);
    std::printf("load energy: E(0-) = %s J, E(t_f+) = %s J, drift = %s J\n",
                fmt(tr.E_pre_start).c_str(), fmt(tr.E_post_end).c_str(),
                fmt(tr.E_post_end - tr.E_pre_start).c_str());
    const double peak_theta = *std::max_element(
        tr.theta.begin(), tr.theta.end(),
        [](double a, double b) { return std::abs(a) < std::abs(b); });
    std::printf("peak |theta| = %s rad\n", fmt(std::abs(peak_theta)).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_power(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const TrolleyProtocol proto = build_protocol(cfg, params, task);
    const SimTrace tr = integrate(proto, params, cfg.initial_state(params), cfg.model, cfg.steps);
    const PowerTrace pt = power_trace(tr, proto, params);
    emit_csv(args, kTraceHeader, trace_rows(tr, pt));

    double peak_total = 0.0, peak_load = 0.0;
    for (std::size_t i = 0; i < pt.grid.size(); ++i) {
        peak_total = std::max(peak_total, std::abs(pt.P_total[i]));
        peak_load = std::max(peak_load, std::abs(pt.P_load[i]));
    }
    std::printf("peak |P_total| = %s W, peak |P_load| = %s W\n", fmt(peak_total).c_str(),
                fmt(peak_load).c_str());
    std::printf("jump work: start = %s J, end = %s J\n", fmt(pt.jump_work_start).c_str(),
                fmt(pt.jump_work_end).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_consumption(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const TrolleyProtocol proto = build_protocol(cfg, params, task);
    const SimTrace tr = integrate(proto, params, cfg.initial_state(params), cfg.model, cfg.steps);
    const EnergyReport rep = consumption(power_trace(tr, proto, params), cfg.eta);
    emit_csv(args, kEnergyMapHeader,
             {{params.M, params.gamma, rep.eta, rep.e_plus, rep.e_minus, rep.e_total,
               rep.bound_simple, rep.bound_tight}});

    std::printf("E_plus = %s J, E_minus = %s J\n", fmt(rep.e_plus).c_str(),
                fmt(rep.e_minus).c_str());
    std::printf("E(eta=%s) = %s J\n", fmt(rep.eta).c_str(), fmt(rep.e_total).c_str());
    std::printf("bounds: gamma d^2/t_f = %s J, tight = %s J\n", fmt(rep.bound_simple).c_str(),
                fmt(rep.bound_tight).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_energy_map(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    if (!cfg.sweep || !cfg.sweep2)
        throw ConfigError(args.config_path + ": energy-map needs sweep and sweep2 axes");
    const bool m_first = cfg.sweep->param == "M" && cfg.sweep2->param == "gamma";
    const bool g_first = cfg.sweep->param == "gamma" && cfg.sweep2->param == "M";
    if (!m_first && !g_first)
        throw ConfigError(args.config_path + ": energy-map sweeps M and gamma only");

    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const TrolleyProtocol proto = build_protocol(cfg, params, task);
    // The load trajectory never depends on M or gamma, so one integration
    // serves the whole grid; only the power bookkeeping is re-evaluated.
    const SimTrace tr = integrate(proto, params, cfg.initial_state(params), cfg.model, cfg.steps);

    const std::vector<double> outer = linspace(cfg.sweep->lo, cfg.sweep->hi, cfg.sweep->count);
    const std::vector<double> inner = linspace(cfg.sweep2->lo, cfg.sweep2->hi, cfg.sweep2->count);
    std::vector<std::vector<double>> rows(outer.size() * inner.size());
    parallel_for(rows.size(), [&](std::size_t idx) {
        const double a = outer[idx / inner.size()];
        const double b = inner[idx % inner.size()];
        const double M_cell = m_first ? a : b;
        const double gamma_cell = m_first ? b : a;
        const CraneParams cell(params.m, M_cell, params.l, gamma_cell, params.g);
        const EnergyReport rep = consumption(power_trace(tr, proto, cell), cfg.eta);
        rows[idx] = {M_cell,      gamma_cell,  rep.eta,         rep.e_plus,
                     rep.e_minus, rep.e_total, rep.bound_simple, rep.bound_tight};
    });
    emit_csv(args, kEnergyMapHeader, rows);

    double lo = rows[0][5], hi = rows[0][5];
    for (const auto& r : rows) {
        lo = std::min(lo, r[5]);
        hi = std::max(hi, r[5]);
    }
    std::printf("energy map: %zu x %zu grid at eta = %s\n", outer.size(), inner.size(),
                fmt(cfg.eta).c_str());
    std::printf("E_total range: [%s, %s] J\n", fmt(lo).c_str(), fmt(hi).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_optimal(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const OCTSolution sol = optimal_protocol(params, task);

    std::vector<std::vector<double>> rows;
    rows.reserve(cfg.steps + 1);
    for (int i = 0; i <= cfg.steps; ++i) {
        const double t = task.t_f * static_cast<double>(i) / cfg.steps;
        rows.push_back({t, sol.protocol.x(t), sol.protocol.xdot(t), sol.protocol.xddot(t),
                        sol.xi(t), sol.xi_dot(t), sol.xi_ddot(t)});
    }
    emit_csv(args, {"t", "x", "xdot", "xddot", "xi", "xidot", "xiddot"}, rows);

    std::printf("constants: c1 = %s, c2 = %s, c3 = %s, c4 = %s, k0 = %s\n", fmt(sol.c1).c_str(),
                fmt(sol.c2).c_str(), fmt(sol.c3).c_str(), fmt(sol.c4).c_str(),
                fmt(sol.k0).c_str());
    std::printf("velocity jumps: start = %s m/s, end = %s m/s\n",
                fmt(sol.protocol.jump_start).c_str(), fmt(sol.protocol.jump_end).c_str());
    std::printf("bounds: simple = %s J, tight = %s J, short-time form = %s J\n",
                fmt(simple_lower_bound(params, task)).c_str(),
                fmt(minimal_consumption_bound(params, task)).c_str(),
                fmt(short_time_asymptote(params, task)).c_str());
    const PmpReport pmp = verify_pmp(sol, params, task);
    std::printf("PMP residuals: H_c constancy = %s, stationarity = %s, endpoints = %s\n",
                fmt(pmp.hc_constancy).c_str(), fmt(pmp.stationarity).c_str(),
                fmt(pmp.endpoint).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_bounds(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const LoadState init = cfg.initial_state(params);
    const double E0 = (cfg.model == ModelKind::Exact)
                          ? load_energy_exact(init.theta, init.theta_dot, 0.0, params)
                          : load_energy_harmonic(init.q, init.q_dot, 0.0, params);
    const PeakPowerBounds peaks = peak_power_bounds(params, task, E0);
    const double simple = simple_lower_bound(params, task);
    const double tight = minimal_consumption_bound(params, task);
    const double short_time = short_time_asymptote(params, task);

    emit_csv(args,
             {"bound_simple", "bound_tight", "bound_short_time", "peak_trolley", "peak_friction",
              "peak_load_long", "peak_load_short", "validity_ratio"},
             {{simple, tight, short_time, peaks.trolley_term, peaks.friction_term,
               peaks.load_long_time, peaks.load_short_time, peaks.validity_ratio}});

    std::printf("consumption bounds: gamma d^2/t_f = %s J, tight = %s J, short-time = %s J\n",
                fmt(simple).c_str(), fmt(tight).c_str(), fmt(short_time).c_str());
    std::printf("peak-power bounds: M-term = %s W, friction = %s W, load long = %s W, "
                "load short = %s W\n",
                fmt(peaks.trolley_term).c_str(), fmt(peaks.friction_term).c_str(),
                fmt(peaks.load_long_time).c_str(), fmt(peaks.load_short_time).c_str());
    std::printf("short-time validity ratio sqrt(2 E0/m)/(w d) = %s (w t_f = %s)\n",
                fmt(peaks.validity_ratio).c_str(), fmt(params.omega * task.t_f).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

std::vector<std::vector<double>> scan_rows(const std::vector<double>& grid,
                                           const std::vector<double>& free_values,
                                           const CraneParams& params, const TransportTask& task,
                                           int steps) {
    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const ExcitationResult r = final_excitation(free_values, grid[i], params, task, steps);
        rows[i] = {r.theta_i_deg, r.dE, r.dE_scaled};
    });
    return rows;
}

int cmd_excitation_scan(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    if (!cfg.sweep || cfg.sweep->param != "theta_i_deg")
        throw ConfigError(args.config_path + ": excitation-scan needs a theta_i_deg sweep axis");
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const std::vector<double> grid = linspace(cfg.sweep->lo, cfg.sweep->hi, cfg.sweep->count);
    const auto rows = scan_rows(grid, cfg.free_values, params, task, cfg.steps);
    emit_csv(args, kScanHeader, rows);

    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r[2]);
    std::printf("K0 = %s J, %zu grid points, max dE/K0 = %s\n",
                fmt(reference_kinetic_energy(params, task)).c_str(), rows.size(),
                fmt(worst).c_str());
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

int cmd_optimize_angles(const CommonArgs& args) {
    const ScenarioConfig cfg = parse_config_file(args.config_path);
    if (cfg.targets_deg.empty())
        throw ConfigError(args.config_path + ": optimize-angles needs targets_deg");
    const CraneParams params = cfg.crane_params();
    const TransportTask task = cfg.transport_task();
    const ExcitationOptimum opt =
        optimize_excitation(cfg.targets_deg, params, task, static_cast<int>(cfg.targets_deg.size()),
                            cfg.init_scale, cfg.steps);

    std::vector<double> grid = cfg.targets_deg;
    if (cfg.sweep && cfg.sweep->param == "theta_i_deg")
        grid = linspace(cfg.sweep->lo, cfg.sweep->hi, cfg.sweep->count);
    emit_csv(args, kScanHeader, scan_rows(grid, opt.free_values, params, task, cfg.steps));

    print_free_values("optimized free coefficients", opt.free_values, task.t_f);
    std::printf("objective (sum of dE/K0 over targets) = %s after %d iterations\n",
                fmt(opt.objective).c_str(), opt.iterations);
    if (!opt.converged)
        std::printf("WARNING: optimizer hit the iteration cap before converging; "
                    "reporting the best point found\n");
    for (double th : cfg.targets_deg) {
        const ExcitationResult r = final_excitation(opt.free_values, th, params, task, cfg.steps);
        std::printf("dE/K0 at %s deg = %s\n", fmt(th).c_str(), fmt(r.dE_scaled).c_str());
    }
    std::printf("wrote %s\n", args.out_path.c_str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"shortcut-to-adiabaticity crane transport toolkit"};
    app.require_subcommand(1);

    struct Command {
        CLI::App* sub;
        CommonArgs args;
        int (*fn)(const CommonArgs&);
    };
    std::vector<Command> commands;
    commands.reserve(9);
    auto add = [&](const char* name, const char* help, int (*fn)(const CommonArgs&)) {
        commands.push_back({app.add_subcommand(name, help), {}, fn});
        add_common(commands.back().sub, commands.back().args, std::string(name) + ".csv");
    };
    add("design", "design the STA trolley trajectory and sample it", cmd_design);
    add("simulate", "integrate the load dynamics under a protocol", cmd_simulate);
    add("power", "power trace of a run (total and load power)", cmd_power);
    add("consumption", "eta-parameterized energy consumption of a run", cmd_consumption);
    add("energy-map", "consumption over an M x gamma sweep grid", cmd_energy_map);
    add("optimal", "Pontryagin-optimal protocol, bounds and PMP residuals", cmd_optimal);
    add("bounds", "consumption and peak-power bounds for a configuration", cmd_bounds);
    add("excitation-scan", "exact-model final excitation over initial angles", cmd_excitation_scan);
    add("optimize-angles", "tune free ansatz coefficients for chosen angles", cmd_optimize_angles);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto& cmd : commands)
            if (cmd.sub->parsed()) return cmd.fn(cmd.args);
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("sta_crane");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace crane
