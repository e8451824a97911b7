// runner.cpp — CLI orchestration: scenario resolution, run/describe/sweep
// dispatch and file emission.

#include "tcg/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tcg/analysis.hpp"
#include "tcg/config_io.hpp"
#include "tcg/csv.hpp"
#include "tcg/errors.hpp"
#include "tcg/generator.hpp"
#include "tcg/presets.hpp"
#include "tcg/solver.hpp"

namespace tcg {

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim_copy(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end == t.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("bad number '" + text + "' in " + what);
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& spec, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split(spec, ',')) out.push_back(parse_double(item, what));
    return out;
}

struct SweepAxis {
    std::vector<double> values;
};

// "omega=0.05:0.5:10,gamma=0.05:0.5:10" -> two inclusive linspaces.
std::pair<SweepAxis, SweepAxis> parse_sweep_spec(const std::string& spec) {
    std::optional<SweepAxis> omega, gamma;
    for (const auto& part : split(spec, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ConfigError("sweep spec: expected key=a:b:n");
        const std::string key = trim_copy(part.substr(0, eq));
        const auto pieces = split(part.substr(eq + 1), ':');
        if (pieces.size() != 3) throw ConfigError("sweep spec: expected key=a:b:n");
        const double a = parse_double(pieces[0], "sweep spec");
        const double b = parse_double(pieces[1], "sweep spec");
        const double n_real = parse_double(pieces[2], "sweep spec");
        if (n_real < 1.0 || n_real != std::floor(n_real)) {
            throw ConfigError("sweep spec: count must be a positive integer");
        }
        const long n = static_cast<long>(n_real);
        SweepAxis axis;
        for (long k = 0; k < n; ++k) {
            axis.values.push_back(
                n == 1 ? a : a + static_cast<double>(k) * (b - a) / static_cast<double>(n - 1));
        }
        if (key == "omega") {
            omega = axis;
        } else if (key == "gamma") {
            gamma = axis;
        } else {
            throw ConfigError("sweep spec: unknown axis '" + key + "'");
        }
    }
    if (!omega || !gamma) throw ConfigError("sweep spec: need both omega= and gamma= axes");
    return {*omega, *gamma};
}

} // namespace

Complex parse_complex_amplitude(const std::string& text) {
    std::string t = trim_copy(text);
    if (t.empty()) throw ConfigError("empty amplitude");
    const bool imaginary_tail = t.back() == 'i' || t.back() == 'I';
    if (!imaginary_tail) return Complex(parse_double(t, "amplitude"), 0.0);

    t.pop_back();
    // Split at the last sign that does not follow an exponent marker.
    std::size_t cut = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    auto sign_unit = [](const std::string& s) -> std::optional<double> {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return std::nullopt;
    };
    if (cut == std::string::npos) {
        const auto unit = sign_unit(t);
        return Complex(0.0, unit ? *unit : parse_double(t, "amplitude"));
    }
    const std::string re = t.substr(0, cut);
    const std::string im = t.substr(cut);
    const auto unit = sign_unit(im);
    return Complex(parse_double(re, "amplitude"),
                   unit ? *unit : parse_double(im, "amplitude"));
}

ComplexVector parse_initial_state(const std::string& spec, int dim) {
    ComplexVector psi = ComplexVector::Zero(dim);
    std::vector<bool> seen(static_cast<std::size_t>(dim), false);
    for (const auto& part : split(spec, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("initial state: expected index:amplitude, got '" + part + "'");
        }
        const double idx_real = parse_double(part.substr(0, colon), "initial state index");
        if (idx_real != std::floor(idx_real)) {
            throw ConfigError("initial state: index must be an integer");
        }
        const int idx = static_cast<int>(idx_real) - 1;
        if (idx < 0 || idx >= dim) {
            throw ConfigError("initial state: level index out of range");
        }
        if (seen[static_cast<std::size_t>(idx)]) {
            throw ConfigError("initial state: duplicate level index");
        }
        seen[static_cast<std::size_t>(idx)] = true;
        psi(idx) = parse_complex_amplitude(part.substr(colon + 1));
    }
    if (!(psi.norm() > 0.0)) throw ConfigError("initial state: must be nonzero");
    return psi;
}

namespace {

struct ResolvedScenario {
    DrivenLevelSystem system;  // resonant drives already folded
    std::vector<double> frame;
    ComplexVector psi0;
    std::vector<ObservableSpec> observables;
    double tau = 1.0;
    double dt = 0.0;  // 0 = derive from the step rule
};

void print_report(std::ostream& out, const ComparisonReport& report) {
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12e", v);
        out << buf;
    };
    out << "# compare window [";
    put(report.window_a);
    out << ", ";
    put(report.window_b);
    out << "]\n";
    for (std::size_t k = 0; k < report.names.size(); ++k) {
        out << report.names[k] << " max_abs=";
        put(report.stats[k].max_abs);
        out << " rms=";
        put(report.stats[k].rms);
        out << " final=";
        put(report.stats[k].final_dev);
        out << "\n";
    }
}

void emit_warnings(std::ostream& err, const std::string& label, const Trajectory& traj) {
    for (const auto& w : traj.warnings) err << "warning (" << label << "): " << w << "\n";
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"driven-atom dynamics: exact Lindblad vs time-coarse-grained generators"};
    app.name("tcgsim");

    std::string preset_name, config_path, method = "both", frame_spec = "preset";
    std::string initial_spec, out_dir = ".", sweep_spec;
    double tmax_over_tau = 10.0;
    double dt_override = 0.0;
    bool no_jump = false, describe_mode = false;

    app.add_option("--preset", preset_name,
                   "built-in scenario: twolevel, raman3, fourlevel, fourlevel_excited");
    app.add_option("--config", config_path, "model description file");
    app.add_option("--method", method, "exact|tcg|both")->default_str("both");
    app.add_flag("--no-jump", no_jump, "drop the second-order jump terms");
    app.add_option("--frame", frame_spec,
                   "per-level phase frequencies (comma list) or 'preset'");
    app.add_option("--initial", initial_spec, "sparse ket, e.g. 1:1,3:0.5+0.5i (1-based)");
    app.add_option("--tmax", tmax_over_tau, "duration in units of tau")->default_str("10");
    app.add_option("--dt", dt_override, "integrator step override");
    app.add_option("--out", out_dir, "output directory")->default_str(".");
    app.add_flag("--describe", describe_mode, "print the assembled generator terms");
    app.add_option("--sweep", sweep_spec, "validity sweep, e.g. omega=0.05:0.5:10,gamma=0.05:0.5:10");

    std::vector<const char*> argv;
    argv.push_back("tcgsim");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (preset_name.empty() == config_path.empty()) {
        throw ConfigError("exactly one of --preset or --config is required");
    }
    if (method != "exact" && method != "tcg" && method != "both") {
        throw ConfigError("--method must be exact, tcg or both");
    }

    ResolvedScenario scenario;
    if (!preset_name.empty()) {
        const ScenarioPreset preset = get_preset(preset_name);
        scenario.system = preset.system;
        scenario.frame = preset.frame;
        scenario.psi0 = preset.psi0;
        scenario.observables = preset.observables;
        scenario.dt = preset.dt;
    } else {
        const ModelConfig config = read_model_config_file(config_path);
        scenario.system = config.system;
        scenario.frame = config.frame;
        scenario.psi0 = ComplexVector::Zero(config.system.dim);
        scenario.psi0(0) = 1.0;
        scenario.observables = default_observables(config.system.dim);
    }
    scenario.system = fold_resonant_drives(scenario.system);
    validate_system(scenario.system);
    if (scenario.frame.empty()) {
        scenario.frame.assign(static_cast<std::size_t>(scenario.system.dim), 0.0);
    }
    if (frame_spec != "preset") {
        scenario.frame = parse_double_list(frame_spec, "--frame");
    }
    if (scenario.frame.size() != static_cast<std::size_t>(scenario.system.dim)) {
        throw ConfigError("--frame needs one phase per level");
    }
    if (!initial_spec.empty()) {
        scenario.psi0 = parse_initial_state(initial_spec, scenario.system.dim);
    }
    scenario.tau = characteristic_tau(scenario.system);

    const bool want_exact = method != "tcg";
    const bool want_tcg = method != "exact";

    if (describe_mode) {
        if (want_exact) {
            out << describe(apply_frame(assemble_exact(scenario.system), scenario.frame));
        }
        if (want_tcg) {
            out << describe(
                apply_frame(assemble_tcg(scenario.system, !no_jump), scenario.frame));
        }
        return 0;
    }

    std::filesystem::create_directories(out_dir);

    if (!sweep_spec.empty()) {
        const auto [omega, gamma] = parse_sweep_spec(sweep_spec);
        SweepOptions options;
        options.frame = scenario.frame;
        options.tmax_over_tau = tmax_over_tau;
        options.initial_states = {scenario.psi0};
        const auto cells =
            validity_sweep(scenario.system, omega.values, gamma.values, options);
        const std::string path = out_dir + "/sweep.csv";
        std::ofstream file(path);
        if (!file) throw ConfigError("cannot write " + path);
        write_sweep_csv(file, cells);
        out << "wrote " << path << "\n";
        return 0;
    }

    const double dt_hint = dt_override > 0.0
                               ? dt_override
                               : (scenario.dt > 0.0 ? scenario.dt
                                                    : default_dt(scenario.system));
    const TimeGrid grid =
        TimeGrid::from_duration(0.0, tmax_over_tau * scenario.tau, dt_hint);
    const DensityMatrix rho0 = DensityMatrix::from_ket(scenario.psi0);

    std::optional<Trajectory> tr_exact, tr_tcg;
    if (want_exact) {
        const Generator gen = apply_frame(assemble_exact(scenario.system), scenario.frame);
        tr_exact = propagate(gen, rho0, grid);
        emit_warnings(err, "exact", *tr_exact);
        const std::string path = out_dir + "/exact.csv";
        std::ofstream file(path);
        if (!file) throw ConfigError("cannot write " + path);
        write_trajectory_csv(file, *tr_exact, scenario.observables, scenario.tau);
        out << "wrote " << path << "\n";
    }
    if (want_tcg) {
        const Generator gen =
            apply_frame(assemble_tcg(scenario.system, !no_jump), scenario.frame);
        tr_tcg = propagate(gen, rho0, grid);
        emit_warnings(err, "tcg", *tr_tcg);
        const std::string path = out_dir + "/tcg.csv";
        std::ofstream file(path);
        if (!file) throw ConfigError("cannot write " + path);
        write_trajectory_csv(file, *tr_tcg, scenario.observables, scenario.tau);
        out << "wrote " << path << "\n";
    }
    if (tr_exact && tr_tcg) {
        const std::string path = out_dir + "/compare.csv";
        std::ofstream file(path);
        if (!file) throw ConfigError("cannot write " + path);
        write_compare_csv(file, *tr_exact, *tr_tcg, scenario.observables);
        out << "wrote " << path << "\n";

        print_report(out, compare(*tr_exact, *tr_tcg, scenario.observables, grid.t0, grid.t1));
        // The early transient is visibly off in the paper's examples; report a
        // steady-regime window starting one tau in as well.
        if (scenario.tau < grid.t1) {
            print_report(out,
                         compare(*tr_exact, *tr_tcg, scenario.observables, scenario.tau, grid.t1));
        }
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ProportionalityViolation& e) {
        err << "error: coarse-graining assumption violated: " << e.what() << "\n";
        return 3;
    } catch (const IntegrationBlowup& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tcg
