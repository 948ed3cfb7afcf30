// experiments.hpp: declarative fidelity sweeps and the paired GSC/rectangular
// comparisons built on top of them.
//
// A SweepSpec maps each grid value onto a modified copy of its base GateConfig;
// every point is an independent gate run, so sweeps are executed point-parallel
// and gathered by index.

#pragma once

#include "rydgate/gate.hpp"
#include "rydgate/model.hpp"
#include "rydgate/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rydgate {

enum class SweepAxis { RatioRect, RatioGsc, RelErrT, RelErrG, Detuning, GammaDecay, KappaDecay, Time };

inline std::string_view axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::RatioRect: return "ratio-rect";
        case SweepAxis::RatioGsc: return "ratio-gsc";
        case SweepAxis::RelErrT: return "rel-err-t";
        case SweepAxis::RelErrG: return "rel-err-g";
        case SweepAxis::Detuning: return "detuning";
        case SweepAxis::GammaDecay: return "gamma";
        case SweepAxis::KappaDecay: return "kappa";
        case SweepAxis::Time: return "time";
    }
    return "unknown";
}

inline constexpr double kGscRatio = 1.3;      // g/Ω_m of the Gaussian scheme
inline constexpr double kMatchedRectRatio = 2.9;  // rectangular g/Ω with nearly the same T
inline const double kFastRectRatio = std::sqrt(3.0) / 2.0;
inline constexpr double kMatchedWindow = 18.4;    // in units of 1/g

// Default grids.
struct GridDefaults {
    double min;
    double max;
    int points;
};
inline constexpr GridDefaults kRatioGrid{0.2, 10.0, 197};
inline constexpr GridDefaults kRelErrGrid{-0.2, 0.2, 81};
inline constexpr GridDefaults kDetuningGrid{-1.0, 1.0, 101};
inline constexpr GridDefaults kDecayGrid{0.0, 0.02, 41};

inline GridDefaults default_grid(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::RatioRect:
        case SweepAxis::RatioGsc: return kRatioGrid;
        case SweepAxis::RelErrT:
        case SweepAxis::RelErrG: return kRelErrGrid;
        case SweepAxis::Detuning: return kDetuningGrid;
        case SweepAxis::GammaDecay:
        case SweepAxis::KappaDecay: return kDecayGrid;
        case SweepAxis::Time: return {0.0, kMatchedWindow, 2};
    }
    throw std::invalid_argument("default_grid: unknown axis");
}

// Gaussian scheme with Ω_m = g/ratio and τ = 2√π/Ω_m.
inline GateConfig gsc_base(double ratio = kGscRatio, double g = 1.0) {
    GateConfig c;
    c.params.g = g;
    c.pulse = gsc_pulse(g / ratio);
    return c;
}

// Rectangular scheme with Ω = g/ratio.
inline GateConfig rect_base(double ratio, double g = 1.0) {
    GateConfig c;
    c.params.g = g;
    c.pulse = RectangularPulse{g / ratio};
    return c;
}

struct SweepSpec {
    SweepAxis axis = SweepAxis::RatioGsc;
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    GateConfig base;

    void validate() const {
        if (!(min < max)) throw std::invalid_argument("SweepSpec: min must be < max");
        if (points < 2) throw std::invalid_argument("SweepSpec: points must be >= 2");
        if (axis == SweepAxis::Time) throw std::invalid_argument("SweepSpec: the time axis is produced by fidelity_trajectory");
        if ((axis == SweepAxis::RatioRect || axis == SweepAxis::RatioGsc) && !(min > 0.0))
            throw std::invalid_argument("SweepSpec: ratio range must be positive");
        if ((axis == SweepAxis::GammaDecay || axis == SweepAxis::KappaDecay) && min < 0.0)
            throw std::invalid_argument("SweepSpec: decay range must be non-negative");
        if ((axis == SweepAxis::RelErrT || axis == SweepAxis::RelErrG) && !(min > -1.0))
            throw std::invalid_argument("SweepSpec: relative error must be > -1");
        base.validate();
    }
};

// x_i = min + (max - min)·i/(points - 1); grids of n and 2n-1 points share
// every other value bit for bit.
inline std::vector<double> sweep_grid(double min, double max, int points) {
    std::vector<double> x(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = min + (max - min) * i / (points - 1);
    x.back() = max;
    return x;
}

// The gate run for one grid value. Rates on the detuning and decay axes are in
// units of the base coupling g.
inline GateConfig apply_axis(const GateConfig& base, SweepAxis axis, double x) {
    GateConfig c = base;
    const double g = base.params.g;
    switch (axis) {
        case SweepAxis::RatioRect: c.pulse = RectangularPulse{g / x}; break;
        case SweepAxis::RatioGsc: c.pulse = gsc_pulse(g / x); break;
        case SweepAxis::RelErrT: c.duration_override = evolution_time(base) * (1.0 + x); break;
        case SweepAxis::RelErrG: c.params.g = g * (1.0 + x); break;
        case SweepAxis::Detuning: c.params.delta2 = x * g; break;
        case SweepAxis::GammaDecay:
            c.params.gamma1 = c.params.gamma2 = x * g;
            c.dissipative = true;
            break;
        case SweepAxis::KappaDecay:
            c.params.kappa = x * g;
            c.dissipative = true;
            break;
        case SweepAxis::Time: throw std::invalid_argument("apply_axis: time is not a per-point axis");
    }
    return c;
}

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Key/value run description written to the CSV meta line.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;
    double wall_seconds = 0.0;                                 // diagnostics only

    void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, double value) { add(std::move(key), format_number(value)); }
};

struct SweepResult {
    SweepAxis axis = SweepAxis::RatioGsc;
    std::vector<double> x;
    std::vector<double> fidelity_gsc;   // empty when the Gaussian scheme was not run
    std::vector<double> fidelity_rect;  // empty when the rectangular scheme was not run
    Metadata meta;
};

struct RunOptions {
    unsigned workers = 0;  // 0: all cores
};

inline void describe_config(Metadata& meta, const std::string& prefix, const GateConfig& c) {
    meta.add(prefix + ".pulse", std::string(pulse_kind(c.pulse)));
    meta.add(prefix + ".ratio", c.params.g / peak_rabi_frequency(c.pulse));
    meta.add(prefix + ".g", c.params.g);
    meta.add(prefix + ".delta2", c.params.delta2);
    meta.add(prefix + ".polar_ratio", c.params.polar_ratio);
    meta.add(prefix + ".gamma1", c.params.gamma1);
    meta.add(prefix + ".gamma2", c.params.gamma2);
    meta.add(prefix + ".kappa", c.params.kappa);
    meta.add(prefix + ".T", evolution_time(c));
    meta.add(prefix + ".dt", step_size(c));
}

// Evaluates every sweep point-parallel; result[s][i] is the Bell fidelity of
// specs[s] at its i-th grid value.
inline std::vector<std::vector<double>> run_sweeps(const std::vector<SweepSpec>& specs, RunOptions opts = {}) {
    std::vector<std::vector<double>> grids;
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    std::vector<std::vector<double>> out;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        specs[s].validate();
        grids.push_back(sweep_grid(specs[s].min, specs[s].max, specs[s].points));
        out.emplace_back(grids.back().size(), 0.0);
        for (std::size_t i = 0; i < grids.back().size(); ++i) tasks.emplace_back(s, i);
    }
    parallel_for(tasks.size(), opts.workers, [&](std::size_t k) {
        const auto [s, i] = tasks[k];
        const GateConfig c = apply_axis(specs[s].base, specs[s].axis, grids[s][i]);
        out[s][i] = bell_fidelity(run_gate(c));
    });
    return out;
}

inline std::vector<double> run_sweep(const SweepSpec& spec, RunOptions opts = {}) { return run_sweeps({spec}, opts).front(); }

// Optional Gaussian and rectangular runs sharing one grid.
struct SchemeSweeps {
    std::optional<SweepSpec> gsc;
    std::optional<SweepSpec> rect;
};

inline SweepResult assemble(SweepAxis axis, const SchemeSweeps& sweeps, RunOptions opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    const SweepSpec& ref = sweeps.gsc ? *sweeps.gsc : sweeps.rect.value();
    if (sweeps.gsc && sweeps.rect &&
        (sweeps.gsc->min != sweeps.rect->min || sweeps.gsc->max != sweeps.rect->max || sweeps.gsc->points != sweeps.rect->points))
        throw std::invalid_argument("assemble: schemes must share one grid");

    std::vector<SweepSpec> specs;
    if (sweeps.gsc) specs.push_back(*sweeps.gsc);
    if (sweeps.rect) specs.push_back(*sweeps.rect);
    auto columns = run_sweeps(specs, opts);

    SweepResult r;
    r.axis = axis;
    r.x = sweep_grid(ref.min, ref.max, ref.points);
    std::size_t col = 0;
    if (sweeps.gsc) r.fidelity_gsc = std::move(columns[col++]);
    if (sweeps.rect) r.fidelity_rect = std::move(columns[col++]);

    r.meta.add("axis", std::string(axis_name(axis)));
    r.meta.add("min", ref.min);
    r.meta.add("max", ref.max);
    r.meta.add("points", std::to_string(ref.points));
    if (sweeps.gsc) describe_config(r.meta, "gsc", sweeps.gsc->base);
    if (sweeps.rect) describe_config(r.meta, "rect", sweeps.rect->base);
    r.meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// ------------------------------------------------------------ figure scans

enum class RatioScheme { Rectangular, Gsc };

// Ideal gate fidelity vs g/Ω (or g/Ω_m) at the nominal gate time, g fixed.
inline SweepResult sweep_ratio(RatioScheme kind, double min, double max, int points, RunOptions opts = {}) {
    if (!(min > 0.0) || max > 20.0) throw std::invalid_argument("sweep_ratio: range must lie within (0, 20]");
    SchemeSweeps s;
    if (kind == RatioScheme::Gsc)
        s.gsc = SweepSpec{SweepAxis::RatioGsc, min, max, points, gsc_base()};
    else
        s.rect = SweepSpec{SweepAxis::RatioRect, min, max, points, rect_base(1.0)};
    return assemble(kind == RatioScheme::Gsc ? SweepAxis::RatioGsc : SweepAxis::RatioRect, s, opts);
}

// Both schemes on one ratio grid.
inline SweepResult sweep_ratio_both(double min, double max, int points, RunOptions opts = {}) {
    if (!(min > 0.0) || max > 20.0) throw std::invalid_argument("sweep_ratio: range must lie within (0, 20]");
    SchemeSweeps s;
    s.gsc = SweepSpec{SweepAxis::RatioGsc, min, max, points, gsc_base()};
    s.rect = SweepSpec{SweepAxis::RatioRect, min, max, points, rect_base(1.0)};
    SweepResult r = assemble(SweepAxis::RatioGsc, s, opts);
    r.meta.entries.front().second = "ratio";
    return r;
}

// Configs used for the two columns of a comparison; either may be absent.
struct SchemeBases {
    std::optional<GateConfig> gsc;
    std::optional<GateConfig> rect;
};

inline SweepResult sweep_bases(SweepAxis axis, double min, double max, int points, const SchemeBases& bases, RunOptions opts) {
    SchemeSweeps s;
    if (bases.gsc) s.gsc = SweepSpec{axis, min, max, points, *bases.gsc};
    if (bases.rect) s.rect = SweepSpec{axis, min, max, points, *bases.rect};
    if (!s.gsc && !s.rect) throw std::invalid_argument("sweep: no scheme selected");
    return assemble(axis, s, opts);
}

enum class ErrorTarget { GateTime, Coupling };

inline SchemeBases relative_error_bases() { return {gsc_base(), rect_base(kFastRectRatio)}; }

// Fidelity vs δX/X for X = T or g.
inline SweepResult sweep_relative_error(ErrorTarget which, double min, double max, int points,
                                        const SchemeBases& bases = relative_error_bases(), RunOptions opts = {}) {
    if (min < -0.5 || max > 0.5) throw std::invalid_argument("sweep_relative_error: range must lie within [-0.5, 0.5]");
    return sweep_bases(which == ErrorTarget::GateTime ? SweepAxis::RelErrT : SweepAxis::RelErrG, min, max, points, bases, opts);
}

// Fidelity vs Δ2/g with Δ1 = Δ2/polar_ratio applied together.
inline SweepResult sweep_detuning(double min, double max, int points, const SchemeBases& bases = {gsc_base(), std::nullopt},
                                  RunOptions opts = {}) {
    return sweep_bases(SweepAxis::Detuning, min, max, points, bases, opts);
}

enum class DecayChannel { Gamma, Kappa };

inline SchemeBases decay_bases() { return {gsc_base(), rect_base(kMatchedRectRatio)}; }
inline SchemeBases fast_gate_bases() { return {std::nullopt, rect_base(kFastRectRatio)}; }

// Dissipative fidelity vs γ (γ1 = γ2 = γ) or κ, in units of g.
inline SweepResult sweep_decay(DecayChannel which, double min, double max, int points, const SchemeBases& bases = decay_bases(),
                               RunOptions opts = {}) {
    return sweep_bases(which == DecayChannel::Gamma ? SweepAxis::GammaDecay : SweepAxis::KappaDecay, min, max, points, bases, opts);
}

inline SchemeBases trajectory_bases() { return {gsc_base(), rect_base(kMatchedRectRatio)}; }

// Fidelity vs t over [0, window] for both schemes, integrated with one common
// step so that both columns share the time grid. window defaults to 18.4/g.
inline SweepResult fidelity_trajectory(const SchemeBases& bases = trajectory_bases(), std::optional<double> window = std::nullopt,
                                       RunOptions opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<GateConfig> runs;
    if (bases.gsc) runs.push_back(*bases.gsc);
    if (bases.rect) runs.push_back(*bases.rect);
    if (runs.empty()) throw std::invalid_argument("fidelity_trajectory: no scheme selected");

    const double span = window.value_or(kMatchedWindow / runs.front().params.g);
    double dt = 0.0;
    for (auto& c : runs) {
        c.duration_override = span;
        c.dt_override.reset();
        c.initial = ProductSuperposition{};
        dt = dt == 0.0 ? default_step(c) : std::min(dt, default_step(c));
    }
    for (auto& c : runs) c.dt_override = dt;

    std::vector<GateResult> results(runs.size());
    parallel_for(runs.size(), opts.workers, [&](std::size_t i) { results[i] = run_gate(runs[i]); });

    SweepResult r;
    r.axis = SweepAxis::Time;
    r.x = results.front().times;
    std::size_t k = 0;
    if (bases.gsc) r.fidelity_gsc = results[k++].fidelity;
    if (bases.rect) r.fidelity_rect = results[k++].fidelity;
    r.meta.add("axis", "time");
    r.meta.add("max", span);
    if (bases.gsc) describe_config(r.meta, "gsc", runs.front());
    if (bases.rect) describe_config(r.meta, "rect", runs.back());
    r.meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// Cesium 90S/90P parameters: g = 2π·2 MHz, Ω_m = g/1.3, γ1 = 2π·194 Hz,
// γ2 = 2π·80 Hz, κ = 2π·5 kHz, no Stark shift. Rates in rad/s.
inline GateConfig cesium_config() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    GateConfig c = gsc_base(kGscRatio, two_pi * 2.0e6);
    c.params.gamma1 = two_pi * 194.0;
    c.params.gamma2 = two_pi * 80.0;
    c.params.kappa = two_pi * 5.0e3;
    c.dissipative = true;
    return c;
}

inline double cesium_example() { return bell_fidelity(run_gate(cesium_config())); }

}  // namespace rydgate
