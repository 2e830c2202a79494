#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crane/cli.hpp"
#include "crane/config.hpp"
#include "crane/integrator.hpp"

using namespace crane;
namespace fs = std::filesystem;

namespace {

const std::string kBase = "m = 10\nl = 5\nd = 10\nt_f = 7\n";

const char* kTraceHeader = "t,x,xdot,xddot,theta,thetadot,q,qdot,E_load,E_total,P_load,P_total";
const char* kEnergyHeader = "M,gamma,eta,E_plus,E_minus,E_total,bound_simple,bound_tight";
const char* kScanHeader = "theta_i_deg,dE,dE_over_K0";

const std::map<std::string, std::string> kHeaders = {
    {"design", "t,x,xdot,xddot,alpha,alphadot,alphaddot"},
    {"simulate", kTraceHeader},
    {"power", kTraceHeader},
    {"consumption", kEnergyHeader},
    {"energy-map", kEnergyHeader},
    {"optimal", "t,x,xdot,xddot,xi,xidot,xiddot"},
    {"bounds",
     "bound_simple,bound_tight,bound_short_time,peak_trolley,peak_friction,"
     "peak_load_long,peak_load_short,validity_ratio"},
    {"excitation-scan", kScanHeader},
    {"optimize-angles", kScanHeader},
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "sta_crane_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

// every non-header cell must round-trip through strtod completely
void check_numeric_body(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t used = 0;
            (void)std::stod(cell, &used);
            CHECK(used == cell.size());
        }
    }
    CHECK(rows >= 1);
}

template <typename Fn>
std::string config_error_of(Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "<no ConfigError>";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

struct EnvGuard {
    ~EnvGuard() { ::unsetenv("STA_CRANE_STEPS"); }
};

}  // namespace

TEST_CASE("config parsing: defaults and basics") {
    const ScenarioConfig cfg = parse_config_text(kBase, "cfg");
    CHECK(cfg.m == 10.0);
    CHECK(cfg.M == 0.0);
    CHECK(cfg.l == 5.0);
    CHECK(cfg.gamma == 0.0);
    CHECK(cfg.g == 9.8);
    CHECK(cfg.d == 10.0);
    CHECK(cfg.t_f == 7.0);
    CHECK(cfg.eta == 1.0);
    CHECK(cfg.steps == kDefaultSteps);
    CHECK(cfg.model == ModelKind::Harmonic);
    CHECK(cfg.protocol == ProtocolChoice::STA);
    CHECK_FALSE(cfg.use_angle_ic);
    CHECK_FALSE(cfg.sweep.has_value());
    CHECK(cfg.free_values.empty());
    CHECK(cfg.targets_deg.empty());
}

TEST_CASE("config parsing: comments, spacing, lists, enums") {
    const std::string text =
        "# scenario\n"
        "  m=10   # inline comment\n"
        "\tl =\t5\n"
        "d = 1e1\n"
        "t_f = 7\n"
        "\n"
        "model = exact\n"
        "protocol = sta\n"
        "free_values = 1.5, -2, 3e2\n"
        "targets_deg = 20, 45\n"
        "theta0_deg = -4\n"
        "steps = 2500\n"
        "eta = -0.5\n"
        "init_scale = 0.1\n";
    const ScenarioConfig cfg = parse_config_text(text, "cfg");
    CHECK(cfg.model == ModelKind::Exact);
    CHECK(cfg.free_values == std::vector<double>{1.5, -2.0, 300.0});
    CHECK(cfg.targets_deg == std::vector<double>{20.0, 45.0});
    CHECK(cfg.use_angle_ic);
    CHECK(cfg.theta0_deg == -4.0);
    CHECK(cfg.steps == 2500);
    CHECK(cfg.eta == -0.5);
    CHECK(cfg.init_scale == 0.1);
}

TEST_CASE("config parsing: sweep axes") {
    const std::string text = kBase +
                             "sweep_param = M\nsweep_min = 0\nsweep_max = 50\nsweep_count = 11\n"
                             "sweep2_param = gamma\nsweep2_min = 0\nsweep2_max = 30\n"
                             "sweep2_count = 7\n";
    const ScenarioConfig cfg = parse_config_text(text, "cfg");
    REQUIRE(cfg.sweep.has_value());
    REQUIRE(cfg.sweep2.has_value());
    CHECK(cfg.sweep->param == "M");
    CHECK(cfg.sweep->lo == 0.0);
    CHECK(cfg.sweep->hi == 50.0);
    CHECK(cfg.sweep->count == 11);
    CHECK(cfg.sweep2->param == "gamma");
    CHECK(cfg.sweep2->count == 7);

    CHECK(contains(config_error_of([&] {
              parse_config_text(kBase + "sweep_min = 0\nsweep_max = 1\nsweep_count = 3\n", "cfg");
          }),
          "missing its param"));
    CHECK(contains(config_error_of([&] {
              parse_config_text(kBase + "sweep_param = M\nsweep_count = 0\n", "cfg");
          }),
          "count"));
    CHECK(contains(config_error_of([&] {
              parse_config_text(
                  kBase + "sweep_param = M\nsweep_min = 1\nsweep_max = 2\nsweep_count = 1\n",
                  "cfg");
          }),
          "min = max"));
    CHECK_NOTHROW(parse_config_text(
        kBase + "sweep_param = M\nsweep_min = 2\nsweep_max = 2\nsweep_count = 1\n", "cfg"));
}

TEST_CASE("config parsing: rejections carry the location") {
    CHECK(contains(config_error_of([] { parse_config_text("m = 10\nwat = 3\n", "cfg"); }),
                   "cfg:2: unknown key 'wat'"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "m = 11\n", "cfg"); }),
                   "duplicate key 'm'"));
    CHECK(contains(config_error_of([] { parse_config_text("m = 10\nl = 5\nd = 10\n", "cfg"); }),
                   "missing required key 't_f'"));
    CHECK(contains(config_error_of([] { parse_config_text("l = 5\nd = 10\nt_f = 7\n", "cfg"); }),
                   "missing required key 'm'"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "gamma = fast\n", "cfg"); }),
                   "not a number"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "M = 3kg\n", "cfg"); }),
                   "trailing junk"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "just words\n", "cfg"); }),
                   "expected key = value"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "steps = 2000.5\n", "cfg"); }),
                   "integer"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "eta = 1.2\n", "cfg"); }),
                   "eta must lie in [-1, 1]"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "steps = 500\n", "cfg"); }),
                   "minimum"));
    CHECK(contains(
        config_error_of([] { parse_config_text(kBase + "theta0_deg = 3\nq0 = 0.1\n", "cfg"); }),
        "conflicts"));
    CHECK(contains(config_error_of(
                       [] { parse_config_text(kBase + "protocol = oct\nfree_values = 1\n", "cfg"); }),
                   "sta protocol only"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "model = both\n", "cfg"); }),
                   "model"));
    CHECK(contains(config_error_of([] { parse_config_text(kBase + "free_values = 1,,2\n", "cfg"); }),
                   "empty element"));
    // physics validation surfaces as ConfigError too
    CHECK(contains(config_error_of([] { parse_config_text("m = -1\nl = 5\nd = 1\nt_f = 7\n", "cfg"); }),
                   "m"));
    CHECK(contains(config_error_of([] { parse_config_text("m = 1\nl = 5\nd = 1\nt_f = 0\n", "cfg"); }),
                   "t_f"));
}

TEST_CASE("config parsing: STA_CRANE_STEPS environment override") {
    EnvGuard guard;

    ::setenv("STA_CRANE_STEPS", "5000", 1);
    CHECK(parse_config_text(kBase, "cfg").steps == 5000);
    // an explicit steps key still wins
    CHECK(parse_config_text(kBase + "steps = 2000\n", "cfg").steps == 2000);

    ::setenv("STA_CRANE_STEPS", "abc", 1);
    CHECK(contains(config_error_of([] { parse_config_text(kBase, "cfg"); }), "STA_CRANE_STEPS"));

    ::setenv("STA_CRANE_STEPS", "500", 1);
    CHECK(contains(config_error_of([] { parse_config_text(kBase, "cfg"); }), "minimum"));

    ::setenv("STA_CRANE_STEPS", "", 1);
    CHECK(parse_config_text(kBase, "cfg").steps == kDefaultSteps);

    ::unsetenv("STA_CRANE_STEPS");
    CHECK(parse_config_text(kBase, "cfg").steps == kDefaultSteps);
}

TEST_CASE("cli smoke: every subcommand runs and writes its schema") {
    const std::string fast = kBase + "steps = 1000\n";
    const std::map<std::string, std::string> configs = {
        {"design", fast},
        {"simulate", fast},
        {"power", fast + "gamma = 15\nM = 10\nmodel = exact\n"},
        {"consumption", fast + "gamma = 15\nM = 10\neta = 0.5\n"},
        {"energy-map", fast +
                           "gamma = 15\nsweep_param = M\nsweep_min = 0\nsweep_max = 20\n"
                           "sweep_count = 3\nsweep2_param = gamma\nsweep2_min = 0\n"
                           "sweep2_max = 30\nsweep2_count = 3\n"},
        {"optimal", fast + "gamma = 15\nM = 10\n"},
        {"bounds", fast + "gamma = 15\nM = 10\ntheta0_deg = 5\n"},
        {"excitation-scan", "m = 10\nl = 5\nd = 10\nt_f = 10\nsteps = 1000\n"
                            "sweep_param = theta_i_deg\nsweep_min = 0\nsweep_max = 10\n"
                            "sweep_count = 3\n"},
        {"optimize-angles", "m = 10\nl = 5\nd = 10\nt_f = 10\nsteps = 1000\n"
                            "targets_deg = 20\n"},
    };
    for (const auto& [sub, text] : configs) {
        CAPTURE(sub);
        const fs::path cfg = write_file(sub + ".cfg", text);
        const fs::path out = scratch_dir() / (sub + "_smoke.csv");
        const int rc = run_cli({sub, cfg.string(), "-o", out.string()});
        CHECK(rc == 0);
        REQUIRE(fs::exists(out));
        CHECK(first_line(out) == kHeaders.at(sub));
        check_numeric_body(out);
    }
}

TEST_CASE("cli: plot script emission") {
    const fs::path cfg = write_file("plot.cfg", kBase + "steps = 1000\n");
    const fs::path out = scratch_dir() / "plot.csv";
    const fs::path script = scratch_dir() / "plot.gp";
    REQUIRE(run_cli({"power", cfg.string(), "-o", out.string(), "--plot-script",
                     script.string()}) == 0);
    const std::string body = read_all(script);
    CHECK(contains(body, "set datafile separator \",\""));
    CHECK(contains(body, "using 1:12"));  // last trace column
    CHECK(contains(body, out.string()));
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli(std::vector<std::string>{}) == 2);                // missing subcommand
    CHECK(run_cli({"transmogrify", "x.cfg"}) == 2);                 // unknown subcommand
    CHECK(run_cli({"simulate"}) == 2);                              // missing config argument
    CHECK(run_cli({"simulate", (scratch_dir() / "nope.cfg").string()}) == 2);
    CHECK(run_cli({"--help"}) == 0);

    const fs::path bad_key = write_file("bad_key.cfg", kBase + "wobble = 1\n");
    CHECK(run_cli({"simulate", bad_key.string()}) == 2);

    // degenerate optimal-control window: a physics error, not a usage error
    const fs::path tiny = write_file("tiny.cfg", "m = 10\nl = 5\nd = 10\nt_f = 1e-3\n");
    CHECK(run_cli({"optimal", tiny.string(), "-o", (scratch_dir() / "tiny.csv").string()}) == 3);

    // pendulum released outside the exact model's validity range
    const fs::path wild = write_file(
        "wild.cfg", kBase + "model = exact\ntheta0_deg = 95\nsteps = 1000\n");
    CHECK(run_cli({"simulate", wild.string(), "-o", (scratch_dir() / "wild.csv").string()}) == 3);
}

TEST_CASE("cli: design rejects the oct protocol") {
    const fs::path cfg = write_file("design_oct.cfg", kBase + "protocol = oct\n");
    CHECK(run_cli({"design", cfg.string(), "-o", (scratch_dir() / "d.csv").string()}) == 2);
}

TEST_CASE("cli: byte-identical reruns") {
    const fs::path cfg = write_file("det.cfg", kBase + "gamma = 15\nM = 10\nsteps = 1000\n");
    const fs::path a = scratch_dir() / "det_a.csv";
    const fs::path b = scratch_dir() / "det_b.csv";
    REQUIRE(run_cli({"power", cfg.string(), "-o", a.string()}) == 0);
    REQUIRE(run_cli({"power", cfg.string(), "-o", b.string()}) == 0);
    const std::string body = read_all(a);
    CHECK(body == read_all(b));
    CHECK(!body.empty());
}

TEST_CASE("fixtures: every shipped config runs through its subcommand") {
    std::vector<fs::path> fixtures;
    for (const auto& entry : fs::directory_iterator(FIXTURES_DIR))
        if (entry.path().extension() == ".cfg") fixtures.push_back(entry.path());
    std::sort(fixtures.begin(), fixtures.end());
    REQUIRE(fixtures.size() >= 10);

    for (const auto& path : fixtures) {
        const std::string stem = path.stem().string();
        const auto sep = stem.find("__");
        REQUIRE_MESSAGE(sep != std::string::npos, stem);
        const std::string sub = stem.substr(0, sep);
        REQUIRE_MESSAGE(kHeaders.count(sub) == 1, stem);
        CAPTURE(stem);

        const fs::path out = scratch_dir() / (stem + ".csv");
        CHECK(run_cli({sub, path.string(), "-o", out.string()}) == 0);
        REQUIRE(fs::exists(out));
        CHECK(first_line(out) == kHeaders.at(sub));
        check_numeric_body(out);
    }
}
