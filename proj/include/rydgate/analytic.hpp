// analytic.hpp: closed-form amplitudes for the rectangular drive, and the
// pulse-area generalisation of the two-level Rabi cycle.

#pragma once

#include "rydgate/model.hpp"
#include "rydgate/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <variant>

namespace rydgate {

// Three-level ladder |1_m1_a⟩ ↔ |1_m r1⟩ ↔ |0_m r2⟩ under a constant drive.
struct RectangularSolution {
    double g = 0.0;
    double omega = 0.0;

    double splitting() const { return std::sqrt(4.0 * g * g + omega * omega); }

    // Amplitude on |1_m1_a⟩; real-valued.
    Complex c11(double t) const {
        if (g < 0.0 || omega < 0.0) throw std::invalid_argument("c11_rect: rates must be >= 0");
        const double four_g2 = 4.0 * g * g;
        const double om2 = omega * omega;
        if (four_g2 + om2 == 0.0) throw std::invalid_argument("c11_rect: g and omega cannot both be zero");
        return (four_g2 + om2 * std::cos(0.5 * t * splitting())) / (four_g2 + om2);
    }
};

inline Complex c11_rect(double t, double g, double omega) { return RectangularSolution{g, omega}.c11(t); }

// Amplitudes on |0_m1_a⟩ and |0_m r1⟩ for a start in |0_m1_a⟩.
struct RabiAmplitudes {
    Complex c_ground;
    Complex c_excited;
};

inline RabiAmplitudes rabi_from_area(double area) {
    return {Complex{std::cos(0.5 * area), 0.0}, Complex{0.0, -std::sin(0.5 * area)}};
}

inline RabiAmplitudes rabi_amplitudes(double t, double omega) { return rabi_from_area(omega * t); }

inline constexpr int kAreaPanels = 2000;

// ∫₀ᵗ Ω(t') dt'. Composite Simpson with a fixed panel count; exact for the
// constant drive.
inline double pulse_area(const PulseShape& pulse, double t) {
    if (t < 0.0) throw std::invalid_argument("pulse_area: t must be >= 0");
    if (const auto* rect = std::get_if<RectangularPulse>(&pulse)) return rect->omega * t;
    if (t == 0.0) return 0.0;
    const double h = t / kAreaPanels;
    double sum = rabi_frequency(pulse, 0.0) + rabi_frequency(pulse, t);
    for (int i = 1; i < kAreaPanels; ++i) sum += (i % 2 ? 4.0 : 2.0) * rabi_frequency(pulse, i * h);
    return sum * h / 3.0;
}

inline RabiAmplitudes rabi_amplitudes_pulsed(double t, const PulseShape& pulse) { return rabi_from_area(pulse_area(pulse, t)); }

}  // namespace rydgate
