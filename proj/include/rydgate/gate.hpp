// gate.hpp: a single CZ gate run. Initial and target states, time evolution,
// Bell fidelity, populations and the phase of the initial basis amplitude.

#pragma once

#include "rydgate/model.hpp"
#include "rydgate/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

namespace rydgate {

// Computational states in the order {|0_m0_a⟩, |0_m1_a⟩, |1_m0_a⟩, |1_m1_a⟩}.
inline constexpr std::array<BasisIndex, 4> kComputationalBasis = {basis::k0m0a, basis::k0m1a, basis::k1m0a, basis::k1m1a};

// diag(1, e^{iπ}, 1, 1)
inline CMatrix cz_matrix() { return CMatrix::diagonal({1.0, std::polar(1.0, std::numbers::pi), 1.0, 1.0}); }

// Lift a 4-component computational-basis vector into the full space.
inline CVector embed_computational(const CVector& v4) {
    if (v4.dim() != kComputationalBasis.size()) throw std::invalid_argument("embed_computational: expected 4 components");
    CVector out(kHilbertDim);
    for (std::size_t k = 0; k < kComputationalBasis.size(); ++k) out[kComputationalBasis[k].flat()] = v4[k];
    return out;
}

// (|0_m⟩+|1_m⟩)/√2 ⊗ (|0_a⟩+|1_a⟩)/√2
inline CVector initial_state() { return embed_computational(CVector{0.5, 0.5, 0.5, 0.5}); }

// CZ applied to initial_state(); amplitudes (+½, −½, +½, +½).
inline CVector target_state() { return embed_computational(CVector{0.5, -0.5, 0.5, 0.5}); }

struct ProductSuperposition {
    bool operator==(const ProductSuperposition&) const = default;
};

using InitialState = std::variant<ProductSuperposition, BasisIndex>;

struct GateConfig {
    SystemParams params;
    PulseShape pulse = RectangularPulse{};
    bool dissipative = false;
    std::optional<double> duration_override;  // stop time, replaces gate_time(pulse)
    InitialState initial = ProductSuperposition{};
    std::optional<double> dt_override;        // replaces the default step rule

    void validate() const {
        params.validate();
        rydgate::validate(pulse);
        if (duration_override && !(*duration_override > 0.0)) throw std::invalid_argument("GateConfig: duration_override must be > 0");
        if (dt_override && !(*dt_override > 0.0)) throw std::invalid_argument("GateConfig: dt_override must be > 0");
    }
};

inline double evolution_time(const GateConfig& config) { return config.duration_override.value_or(gate_time(config.pulse)); }

inline constexpr double kStepsPerGate = 20000.0;
inline constexpr double kStepsPerCycle = 0.02;  // dt · fastest rate

// dt = min(T/20000, 0.02 / max(g, Ω_peak))
inline double default_step(const GateConfig& config) {
    const double fastest = std::max(config.params.g, peak_rabi_frequency(config.pulse));
    return std::min(evolution_time(config) / kStepsPerGate, kStepsPerCycle / fastest);
}

inline double step_size(const GateConfig& config) { return config.dt_override.value_or(default_step(config)); }

inline constexpr double kPhaseAmplitudeFloor = 1e-6;

struct GateResult {
    std::vector<double> times;
    std::vector<std::array<double, kHilbertDim>> populations;
    std::vector<std::optional<double>> tracked_phase;  // Basis runs (unitary) only; nullopt marks a gap
    std::vector<double> fidelity;                      // ProductSuperposition runs only
    double dt = 0.0;                                   // step actually used

    std::size_t samples() const noexcept { return times.size(); }
};

inline CVector initial_vector(const InitialState& init) {
    return std::visit(
        [](const auto& s) -> CVector {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductSuperposition>)
                return initial_state();
            else
                return basis_state(s);
        },
        init);
}

inline GateResult run_gate(const GateConfig& config) {
    config.validate();
    const double duration = evolution_time(config);
    const double dt_max = step_size(config);
    const Hamiltonian hamiltonian(config.params, config.pulse);
    const CVector psi0 = initial_vector(config.initial);
    const CVector target = target_state();
    const auto* tracked = std::get_if<BasisIndex>(&config.initial);
    const bool superposition = tracked == nullptr;

    GateResult result;
    const std::size_t steps = step_count(duration, dt_max);
    result.dt = duration / static_cast<double>(steps);

    if (!config.dissipative) {
        const auto traj = integrate_schrodinger(hamiltonian, psi0, duration, dt_max);
        result.times = traj.times;
        for (const auto& psi : traj.states) {
            std::array<double, kHilbertDim> pop{};
            for (std::size_t k = 0; k < kHilbertDim; ++k) pop[k] = std::norm(psi[k]);
            result.populations.push_back(pop);
            if (superposition) {
                result.fidelity.push_back(std::norm(inner(target, psi)));
            } else {
                const Complex amp = psi[tracked->flat()];
                result.tracked_phase.push_back(std::abs(amp) < kPhaseAmplitudeFloor ? std::nullopt : std::optional<double>(std::arg(amp)));
            }
        }
    } else {
        const auto collapse = collapse_operators(config.params);
        const auto traj = integrate_lindblad(hamiltonian, collapse, CMatrix::outer(psi0, psi0), duration, dt_max);
        result.times = traj.times;
        for (const auto& rho : traj.states) {
            std::array<double, kHilbertDim> pop{};
            for (std::size_t k = 0; k < kHilbertDim; ++k) pop[k] = std::real(rho(k, k));
            result.populations.push_back(pop);
            if (superposition) result.fidelity.push_back(std::real(expectation(target, rho, target)));
        }
    }
    return result;
}

// Fidelity at the final sample; only defined for ProductSuperposition runs.
inline double bell_fidelity(const GateResult& result) {
    if (result.fidelity.empty()) throw std::invalid_argument("bell_fidelity: result does not come from a ProductSuperposition run");
    return result.fidelity.back();
}

}  // namespace rydgate
