// cli.hpp: command-line front end (argument parsing, config files, dispatch)
//
// Commands: simulate, sweep, figures, example. Values from a `--config` file
// (flat `key = value` lines, `#` comments, keys named like the flags) are
// overridden by flags given on the command line. CSV goes to the data stream
// (or --out); diagnostics go to the error stream.

#pragma once

#include "rydgate/csv.hpp"
#include "rydgate/experiments.hpp"
#include "rydgate/gate.hpp"
#include "rydgate/model.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace rydgate::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Simulate, Sweep, Figures, Example };

inline std::string_view command_name(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Sweep: return "sweep";
        case Command::Figures: return "figures";
        case Command::Example: return "example";
    }
    return "";
}

struct RunManifest {
    Command command = Command::Simulate;
    std::optional<std::string> config_path;
    std::optional<std::string> output;  // --out, or --out-dir for figures
    std::map<std::string, std::string> overrides;
};

struct ParseResult {
    std::optional<RunManifest> manifest;  // empty when parsing ended early (help or error)
    int exit_code = 0;
};

// ---------------------------------------------------------------- flags

struct FlagInfo {
    std::string_view name;
    std::string_view help;
};

inline const std::vector<FlagInfo>& param_flags() {
    static const std::vector<FlagInfo> flags = {
        {"units", "rate units: dimensionless (g = 1) or hz (inputs in Hz, used as 2π·value)"},
        {"g", "atom-photon coupling (default 1, or 2e6 with --units hz)"},
        {"delta2", "Stark shift of |r2>; |r1> is shifted by delta2/polar-ratio"},
        {"polar-ratio", "polarizability ratio alpha2/alpha1 (default 22)"},
        {"gamma", "decay rate of both Rydberg levels"},
        {"gamma1", "decay rate of |r1> (overrides --gamma)"},
        {"gamma2", "decay rate of |r2> (overrides --gamma)"},
        {"kappa", "cavity photon decay rate"},
    };
    return flags;
}

inline const std::vector<FlagInfo>& command_flags(Command c) {
    static const std::vector<FlagInfo> simulate = {
        {"pulse", "drive shape: gaussian or rect"},
        {"ratio", "g/Omega (rect) or g/Omega_m (gaussian); default 1.3 gaussian, sqrt(3)/2 rect"},
        {"initial", "initial state: superposition or a basis label such as 1m1a"},
        {"duration", "evolution time (default: nominal gate time)"},
        {"out", "output CSV path (default: standard output)"},
    };
    static const std::vector<FlagInfo> sweep = {
        {"axis", "ratio, ratio-gsc, ratio-rect, rel-err-t, rel-err-g, detuning, gamma, kappa or time"},
        {"min", "first grid value (detuning and decay axes in units of g)"},
        {"max", "last grid value (time axis: window length)"},
        {"points", "number of grid points"},
        {"schemes", "both, gsc or rect (default depends on the axis)"},
        {"ratio-gsc", "g/Omega_m of the Gaussian scheme (default 1.3)"},
        {"ratio-rect", "g/Omega of the rectangular scheme (default sqrt(3)/2 for error scans, 2.9 otherwise)"},
        {"out", "output CSV path (default: standard output)"},
        {"workers", "worker threads (default: RYDGATE_WORKERS or all cores)"},
    };
    static const std::vector<FlagInfo> figures = {
        {"out-dir", "directory for fig3.csv ... fig8.csv and example.txt (default: figures)"},
        {"workers", "worker threads (default: RYDGATE_WORKERS or all cores)"},
    };
    static const std::vector<FlagInfo> example = {
        {"gamma1", "decay rate of |r1> in Hz (default 194)"},
        {"gamma2", "decay rate of |r2> in Hz (default 80)"},
        {"kappa", "cavity decay rate in Hz (default 5000)"},
        {"out", "also write the fidelity line to this file"},
    };
    switch (c) {
        case Command::Simulate: return simulate;
        case Command::Sweep: return sweep;
        case Command::Figures: return figures;
        case Command::Example: return example;
    }
    throw std::logic_error("command_flags: unknown command");
}

inline bool takes_params(Command c) { return c == Command::Simulate || c == Command::Sweep; }

// Every key accepted for a command, both as a flag and in a config file.
inline std::set<std::string> allowed_keys(Command c) {
    std::set<std::string> keys;
    for (const auto& f : command_flags(c)) keys.emplace(f.name);
    if (takes_params(c))
        for (const auto& f : param_flags()) keys.emplace(f.name);
    return keys;
}

inline bool is_output_key(std::string_view key) { return key == "out" || key == "out-dir"; }

inline std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::optional<long> parse_integer(std::string_view s) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline const std::set<std::string>& axis_names() {
    static const std::set<std::string> names = {"ratio",     "ratio-gsc",  "ratio-rect", "rel-err-t", "rel-err-g",
                                                "detuning",  "gamma",      "kappa",      "time"};
    return names;
}

inline std::set<std::string> initial_names() {
    std::set<std::string> names = {"superposition"};
    for (auto l : kBasisLabels) names.emplace(l);
    return names;
}

// Throws UsageError when `value` is not acceptable for `key`.
inline void validate_value(const std::string& key, const std::string& value) {
    auto one_of = [&](const std::set<std::string>& options) {
        if (!options.contains(value)) {
            std::string msg = "--" + key + ": '" + value + "' is not one of:";
            for (const auto& o : options) msg += " " + o;
            throw UsageError(msg);
        }
    };
    if (key == "units") return one_of({"dimensionless", "hz"});
    if (key == "pulse") return one_of({"gaussian", "rect", "rectangular"});
    if (key == "schemes") return one_of({"both", "gsc", "rect"});
    if (key == "axis") return one_of(axis_names());
    if (key == "initial") return one_of(initial_names());
    if (key == "points" || key == "workers") {
        const auto v = parse_integer(value);
        if (!v) throw UsageError("--" + key + ": malformed integer '" + value + "'");
        if (key == "points" && *v < 2) throw UsageError("--points must be >= 2");
        if (key == "workers" && *v < 0) throw UsageError("--workers must be >= 0");
        return;
    }
    if (key == "out" || key == "out-dir" || key == "config") {
        if (value.empty()) throw UsageError("--" + key + ": empty path");
        return;
    }
    if (!parse_double(value)) throw UsageError("--" + key + ": malformed number '" + value + "'");
}

inline CLI::Validator value_check(const std::string& key) {
    return CLI::Validator(
        [key](std::string& v) -> std::string {
            try {
                validate_value(key, v);
            } catch (const UsageError& e) {
                return e.what();
            }
            return {};
        },
        "", key);
}

// ---------------------------------------------------------------- parse

inline ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rydgate: hybrid atom-photon controlled-Z gate simulator"};
    app.require_subcommand(1);
    app.footer("Run `rydgate <command> --help` for the flags of one command.");

    RunManifest m;
    std::map<CLI::App*, Command> commands;
    std::optional<std::string> config;
    std::optional<std::string> output;

    auto add_flag = [&](CLI::App* sub, const FlagInfo& f) {
        const std::string key(f.name);
        sub->add_option_function<std::string>(
               "--" + key,
               [&m, &output, key](const std::string& v) {
                   if (is_output_key(key))
                       output = v;
                   else
                       m.overrides[key] = v;
               },
               std::string(f.help))
            ->check(value_check(key))
            ->type_name(key == "points" || key == "workers" ? "INT" : "VALUE");
    };

    for (Command c : {Command::Simulate, Command::Sweep, Command::Figures, Command::Example}) {
        static const std::map<Command, std::string> descriptions = {
            {Command::Simulate, "run one gate and write its trajectory (populations, phase, fidelity)"},
            {Command::Sweep, "scan one parameter and write fidelity for the Gaussian and rectangular schemes"},
            {Command::Figures, "regenerate every figure dataset into a directory"},
            {Command::Example, "dissipative cesium gate; prints the Bell fidelity"},
        };
        CLI::App* sub = app.add_subcommand(std::string(command_name(c)), descriptions.at(c));
        commands[sub] = c;
        sub->add_option("--config", config, "flat key = value file; command-line flags take precedence")->check(value_check("config"));
        for (const auto& f : command_flags(c)) add_flag(sub, f);
        if (takes_params(c))
            for (const auto& f : param_flags()) add_flag(sub, f);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help("", CLI::AppFormatMode::All) : subs.front()->help());
        return {std::nullopt, 0};
    } catch (const CLI::ParseError& e) {
        err << "rydgate: " << e.what() << "\n";
        return {std::nullopt, e.get_exit_code() == 0 ? 1 : e.get_exit_code()};
    }

    m.command = commands.at(app.get_subcommands().front());
    m.config_path = config;
    m.output = output;
    if (m.command == Command::Sweep && !m.config_path && !m.overrides.contains("axis")) {
        err << "rydgate: sweep: --axis is required\n";
        return {std::nullopt, 1};
    }
    return {m, 0};
}

inline ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_args(args, out, err);
}

// ---------------------------------------------------------------- config

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Reads `key = value` lines; `#` starts a comment. Keys are validated against
// the flags of `command`.
inline std::map<std::string, std::string> read_config(std::istream& is, Command command, const std::string& origin = "config") {
    const auto keys = allowed_keys(command);
    std::map<std::string, std::string> values;
    std::string line;
    for (int lineno = 1; std::getline(is, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (!keys.contains(key))
            throw UsageError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "' for " + std::string(command_name(command)));
        validate_value(key, value);
        values[key] = value;
    }
    return values;
}

inline std::map<std::string, std::string> load_config(const std::string& path, Command command) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read config file " + path);
    return read_config(is, command, path);
}

class Settings {
public:
    explicit Settings(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.contains(key); }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double number(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const auto v = parse_double(it->second);
        if (!v) throw UsageError("--" + key + ": malformed number '" + it->second + "'");
        return *v;
    }

    long integer(const std::string& key, long fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const auto v = parse_integer(it->second);
        if (!v) throw UsageError("--" + key + ": malformed integer '" + it->second + "'");
        return *v;
    }

private:
    std::map<std::string, std::string> values_;
};

// ---------------------------------------------------------------- run

struct Units {
    bool hz = false;
    double rate_scale = 1.0;  // input value → angular frequency

    static Units from(const Settings& s) {
        Units u;
        u.hz = s.text("units", "dimensionless") == "hz";
        u.rate_scale = u.hz ? 2.0 * std::numbers::pi : 1.0;
        return u;
    }
};

inline SystemParams params_from(const Settings& s, const Units& u) {
    SystemParams p;
    p.g = s.number("g", u.hz ? 2.0e6 : 1.0) * u.rate_scale;
    p.delta2 = s.number("delta2", 0.0) * u.rate_scale;
    p.polar_ratio = s.number("polar-ratio", kDefaultPolarizabilityRatio);
    const double gamma = s.number("gamma", 0.0);
    p.gamma1 = s.number("gamma1", gamma) * u.rate_scale;
    p.gamma2 = s.number("gamma2", gamma) * u.rate_scale;
    p.kappa = s.number("kappa", 0.0) * u.rate_scale;
    p.validate();
    return p;
}

inline unsigned workers_from(const Settings& s) {
    if (s.has("workers")) return static_cast<unsigned>(s.integer("workers", 0));
    if (const char* env = std::getenv("RYDGATE_WORKERS")) {
        const auto v = parse_integer(env);
        if (!v || *v < 0) throw UsageError(std::string("RYDGATE_WORKERS: malformed worker count '") + env + "'");
        return static_cast<unsigned>(*v);
    }
    return 0;
}

// Writes through `writer` to `path`, or to `out` when no path is given.
template <class Writer>
void emit(const std::optional<std::string>& path, std::ostream& out, Writer&& writer) {
    if (!path || *path == "-") {
        writer(out);
        return;
    }
    detail::write_file(*path, writer);
}

inline int run_simulate(const Settings& s, const std::optional<std::string>& output, std::ostream& out, std::ostream& err) {
    const Units u = Units::from(s);
    GateConfig c;
    c.params = params_from(s, u);
    const bool gaussian = s.text("pulse", "gaussian") == "gaussian";
    const double ratio = s.number("ratio", gaussian ? kGscRatio : kFastRectRatio);
    if (!(ratio > 0.0)) throw UsageError("--ratio must be positive");
    if (gaussian)
        c.pulse = gsc_pulse(c.params.g / ratio);
    else
        c.pulse = RectangularPulse{c.params.g / ratio};
    const std::string initial = s.text("initial", "superposition");
    if (initial != "superposition") c.initial = basis_from_label(initial);
    if (s.has("duration")) c.duration_override = s.number("duration", 0.0);
    c.dissipative = c.params.has_decay();

    const GateResult r = run_gate(c);
    emit(output, out, [&](std::ostream& os) { write_trajectory_csv(os, r, describe_run(c)); });
    if (!r.fidelity.empty()) err << "final fidelity " << format_number(bell_fidelity(r)) << "\n";
    return 0;
}

inline SweepAxis per_point_axis(const std::string& name) {
    static const std::map<std::string, SweepAxis> axes = {
        {"ratio-gsc", SweepAxis::RatioGsc}, {"ratio-rect", SweepAxis::RatioRect}, {"rel-err-t", SweepAxis::RelErrT},
        {"rel-err-g", SweepAxis::RelErrG},  {"detuning", SweepAxis::Detuning},    {"gamma", SweepAxis::GammaDecay},
        {"kappa", SweepAxis::KappaDecay},   {"time", SweepAxis::Time}};
    return axes.at(name);
}

inline SweepResult sweep_from(const Settings& s, RunOptions opts) {
    const Units u = Units::from(s);
    const std::string axis = s.text("axis", "");
    if (axis.empty()) throw UsageError("sweep: --axis is required");

    std::string schemes = "both";
    if (axis == "ratio-gsc" || axis == "detuning") schemes = "gsc";
    if (axis == "ratio-rect") schemes = "rect";
    schemes = s.text("schemes", schemes);
    const bool want_gsc = schemes != "rect";
    const bool want_rect = schemes != "gsc";

    const SystemParams params = params_from(s, u);
    const bool error_scan = axis == "rel-err-t" || axis == "rel-err-g";
    const double ratio_gsc = s.number("ratio-gsc", kGscRatio);
    const double ratio_rect = s.number("ratio-rect", error_scan ? kFastRectRatio : kMatchedRectRatio);
    if (!(ratio_gsc > 0.0) || !(ratio_rect > 0.0)) throw UsageError("sweep: scheme ratios must be positive");

    SchemeBases bases;
    if (want_gsc) {
        bases.gsc = gsc_base(ratio_gsc, params.g);
        bases.gsc->params = params;
    }
    if (want_rect) {
        bases.rect = rect_base(ratio_rect, params.g);
        bases.rect->params = params;
    }
    for (auto* b : {&bases.gsc, &bases.rect})
        if (*b) (*b)->dissipative = params.has_decay();

    if (axis == "time") {
        std::optional<double> window;
        if (s.has("max")) window = s.number("max", 0.0);
        return fidelity_trajectory(bases, window, opts);
    }

    const SweepAxis grid_axis = axis == "ratio" ? SweepAxis::RatioGsc : per_point_axis(axis);
    const GridDefaults grid = default_grid(grid_axis);
    const double min = s.number("min", grid.min);
    const double max = s.number("max", grid.max);
    const long points = s.integer("points", grid.points);
    if (points < 2) throw UsageError("--points must be >= 2");
    const int n = static_cast<int>(points);

    if (axis == "ratio" || axis == "ratio-gsc" || axis == "ratio-rect") {
        SchemeSweeps sw;
        if (want_gsc) sw.gsc = SweepSpec{SweepAxis::RatioGsc, min, max, n, *bases.gsc};
        if (want_rect) sw.rect = SweepSpec{SweepAxis::RatioRect, min, max, n, *bases.rect};
        SweepResult r = assemble(grid_axis, sw, opts);
        if (axis == "ratio") r.meta.entries.front().second = "ratio";
        return r;
    }
    return sweep_bases(grid_axis, min, max, n, bases, opts);
}

inline int run_sweep_command(const Settings& s, const std::optional<std::string>& output, std::ostream& out, std::ostream& err) {
    const SweepResult r = sweep_from(s, RunOptions{workers_from(s)});
    emit(output, out, [&](std::ostream& os) { write_sweep_csv(os, r); });
    err << "sweep " << r.x.size() << " points in " << r.meta.wall_seconds << " s\n";
    return 0;
}

inline std::string gnuplot_sweep(const std::string& csv, const std::string& xlabel, bool gsc, bool rect) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel 'fidelity'\n"
       << "plot ";
    if (gsc) os << "'" << csv << "' using 1:2 with lines title 'GSC'";
    if (gsc && rect) os << ", ";
    if (rect) os << "'" << csv << "' using 1:3 with lines title 'rectangular'";
    os << "\n";
    return os.str();
}

inline std::string gnuplot_trajectory(const std::string& csv, const std::vector<std::size_t>& population_columns) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set xlabel 't'\n"
       << "set multiplot layout 2,1\n"
       << "set ylabel 'population'\n"
       << "plot ";
    for (std::size_t i = 0; i < population_columns.size(); ++i) {
        const std::size_t k = population_columns[i];
        os << (i ? ", " : "") << "'" << csv << "' using 1:" << k + 2 << " with lines title '" << kBasisLabels[k] << "'";
    }
    os << "\nset ylabel 'phase (rad)'\n"
       << "plot '" << csv << "' using 1:10 with lines title 'phase'\n"
       << "unset multiplot\n";
    return os.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    detail::write_file(path.string(), [&](std::ostream& os) { os << text; });
}

inline constexpr double kCesiumThreshold = 0.98;

inline std::string fidelity_line(double f) { return "fidelity," + format_number(f) + "\n"; }

inline int run_figures(const Settings& s, const std::optional<std::string>& output, std::ostream& err) {
    const std::filesystem::path dir = output.value_or("figures");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const RunOptions opts{workers_from(s)};

    auto sweep_file = [&](const std::string& name, const SweepResult& r, const std::string& xlabel) {
        write_csv(r, (dir / (name + ".csv")).string());
        write_text(dir / (name + ".gp"), gnuplot_sweep(name + ".csv", xlabel, !r.fidelity_gsc.empty(), !r.fidelity_rect.empty()));
        err << name << ".csv: " << r.x.size() << " rows, " << r.meta.wall_seconds << " s\n";
    };
    auto trajectory_file = [&](const std::string& name, BasisIndex initial, const std::vector<std::size_t>& columns) {
        GateConfig c = gsc_base();
        c.initial = initial;
        write_csv(run_gate(c), (dir / (name + ".csv")).string(), describe_run(c));
        write_text(dir / (name + ".gp"), gnuplot_trajectory(name + ".csv", columns));
        err << name << ".csv written\n";
    };

    sweep_file("fig3", sweep_ratio_both(kRatioGrid.min, kRatioGrid.max, kRatioGrid.points, opts), "g/Omega");
    trajectory_file("fig4", basis::k1m1a, {basis::k1m1a.flat(), basis::k0mr2.flat(), basis::k1mr1.flat()});
    trajectory_file("fig4_0m1a", basis::k0m1a, {basis::k0m1a.flat(), basis::k0mr1.flat()});
    sweep_file("fig5", fidelity_trajectory(trajectory_bases(), std::nullopt, opts), "g t");
    sweep_file("fig6", sweep_relative_error(ErrorTarget::GateTime, kRelErrGrid.min, kRelErrGrid.max, kRelErrGrid.points,
                                            relative_error_bases(), opts),
               "dT/T");
    sweep_file("fig6_g", sweep_relative_error(ErrorTarget::Coupling, kRelErrGrid.min, kRelErrGrid.max, kRelErrGrid.points,
                                              relative_error_bases(), opts),
               "dg/g");
    sweep_file("fig7", sweep_detuning(kDetuningGrid.min, kDetuningGrid.max, kDetuningGrid.points, {gsc_base(), std::nullopt}, opts),
               "Delta2/g");
    sweep_file("fig8", sweep_decay(DecayChannel::Gamma, kDecayGrid.min, kDecayGrid.max, kDecayGrid.points, decay_bases(), opts),
               "gamma/g");
    sweep_file("fig8_kappa", sweep_decay(DecayChannel::Kappa, kDecayGrid.min, kDecayGrid.max, kDecayGrid.points, decay_bases(), opts),
               "kappa/g");
    sweep_file("fig8_fast", sweep_decay(DecayChannel::Gamma, kDecayGrid.min, kDecayGrid.max, kDecayGrid.points, fast_gate_bases(), opts),
               "gamma/g");
    sweep_file("fig8_kappa_fast",
               sweep_decay(DecayChannel::Kappa, kDecayGrid.min, kDecayGrid.max, kDecayGrid.points, fast_gate_bases(), opts),
               "kappa/g");

    const double f = cesium_example();
    write_text(dir / "example.txt", fidelity_line(f));
    err << "example.txt: fidelity " << format_number(f) << "\n";
    return 0;
}

inline int run_example(const Settings& s, const std::optional<std::string>& output, std::ostream& out, std::ostream& err) {
    GateConfig c = cesium_config();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    c.params.gamma1 = two_pi * s.number("gamma1", 194.0);
    c.params.gamma2 = two_pi * s.number("gamma2", 80.0);
    c.params.kappa = two_pi * s.number("kappa", 5.0e3);
    const double f = bell_fidelity(run_gate(c));
    out << fidelity_line(f);
    if (output) write_text(*output, fidelity_line(f));
    if (!(f > kCesiumThreshold)) {
        err << "rydgate: example: fidelity " << format_number(f) << " does not exceed " << kCesiumThreshold << "\n";
        return 1;
    }
    return 0;
}

// Loads the config file (if any), applies overrides and dispatches. Returns
// the process exit code.
inline int run_manifest(const RunManifest& m, std::ostream& out, std::ostream& err) {
    try {
        std::map<std::string, std::string> values;
        std::optional<std::string> output = m.output;
        if (m.config_path) {
            values = load_config(*m.config_path, m.command);
            for (const char* key : {"out", "out-dir"}) {
                if (const auto it = values.find(key); it != values.end()) {
                    if (!output) output = it->second;
                    values.erase(it);
                }
            }
        }
        const auto keys = allowed_keys(m.command);
        for (const auto& [k, v] : m.overrides) {
            if (!keys.contains(k)) throw UsageError("unknown key '" + k + "' for " + std::string(command_name(m.command)));
            validate_value(k, v);
            values[k] = v;
        }
        const Settings s(std::move(values));
        switch (m.command) {
            case Command::Simulate: return run_simulate(s, output, out, err);
            case Command::Sweep: return run_sweep_command(s, output, out, err);
            case Command::Figures: return run_figures(s, output, err);
            case Command::Example: return run_example(s, output, out, err);
        }
        return 1;
    } catch (const std::exception& e) {
        err << "rydgate: " << command_name(m.command) << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rydgate::cli
