// model.hpp: hybrid cavity⊗atom basis, drive pulses, Hamiltonian and jump operators
//
// Basis ordering: flat index = 4·photon + atom, atom ∈ {0_a, 1_a, r1, r2},
// photon ∈ {0, 1}. All rates are angular frequencies; time is in the inverse
// of whatever unit the rates use.

#pragma once

#include "rydgate/numerics.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace rydgate {

inline constexpr std::size_t kAtomLevels = 4;
inline constexpr std::size_t kPhotonLevels = 2;
inline constexpr std::size_t kHilbertDim = kAtomLevels * kPhotonLevels;

enum class Atom : std::size_t { Zero = 0, One = 1, R1 = 2, R2 = 3 };

struct BasisIndex {
    int photon = 0;
    Atom atom = Atom::Zero;

    constexpr std::size_t flat() const noexcept { return kAtomLevels * static_cast<std::size_t>(photon) + static_cast<std::size_t>(atom); }

    static constexpr BasisIndex from_flat(std::size_t k) {
        if (k >= kHilbertDim) throw std::out_of_range("BasisIndex: flat index out of range");
        return BasisIndex{static_cast<int>(k / kAtomLevels), static_cast<Atom>(k % kAtomLevels)};
    }

    constexpr bool operator==(const BasisIndex&) const = default;
};

// Short labels used in CSV headers and on the command line.
inline constexpr std::array<std::string_view, kHilbertDim> kBasisLabels = {"0m0a", "0m1a", "0mr1", "0mr2",
                                                                           "1m0a", "1m1a", "1mr1", "1mr2"};

inline std::string_view label(BasisIndex b) { return kBasisLabels[b.flat()]; }

inline BasisIndex basis_from_label(std::string_view s) {
    for (std::size_t k = 0; k < kHilbertDim; ++k)
        if (kBasisLabels[k] == s) return BasisIndex::from_flat(k);
    throw std::invalid_argument("unknown basis label: " + std::string(s));
}

namespace basis {
inline constexpr BasisIndex k0m0a{0, Atom::Zero};
inline constexpr BasisIndex k0m1a{0, Atom::One};
inline constexpr BasisIndex k0mr1{0, Atom::R1};
inline constexpr BasisIndex k0mr2{0, Atom::R2};
inline constexpr BasisIndex k1m0a{1, Atom::Zero};
inline constexpr BasisIndex k1m1a{1, Atom::One};
inline constexpr BasisIndex k1mr1{1, Atom::R1};
inline constexpr BasisIndex k1mr2{1, Atom::R2};
}  // namespace basis

inline CVector basis_state(BasisIndex b) { return CVector::basis(kHilbertDim, b.flat()); }

// ------------------------------------------------------------------ pulses

struct RectangularPulse {
    double omega = 0.0;
};

// Ω(t) = Ω_m exp(-(t - 2τ)² / τ²), centred at 2τ.
struct GaussianPulse {
    double omega_m = 0.0;
    double tau = 0.0;
};

using PulseShape = std::variant<RectangularPulse, GaussianPulse>;

inline double rabi_frequency(const PulseShape& pulse, double t) {
    return std::visit(
        [t](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, RectangularPulse>) {
                return p.omega;
            } else {
                const double x = (t - 2.0 * p.tau) / p.tau;
                return p.omega_m * std::exp(-x * x);
            }
        },
        pulse);
}

inline double peak_rabi_frequency(const PulseShape& pulse) {
    return std::visit(
        [](const auto& p) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RectangularPulse>)
                return p.omega;
            else
                return p.omega_m;
        },
        pulse);
}

inline bool is_gaussian(const PulseShape& pulse) { return std::holds_alternative<GaussianPulse>(pulse); }

inline std::string_view pulse_kind(const PulseShape& pulse) { return is_gaussian(pulse) ? "gaussian" : "rectangular"; }

// Width for which the Gaussian area over [0, 4τ] is ≈ √π Ω_m τ = 2π.
inline double gsc_tau(double omega_m) {
    if (!(omega_m > 0.0)) throw std::invalid_argument("gsc_tau: omega_m must be positive");
    return 2.0 * std::sqrt(std::numbers::pi) / omega_m;
}

inline GaussianPulse gsc_pulse(double omega_m) { return GaussianPulse{omega_m, gsc_tau(omega_m)}; }

// Nominal gate duration: 2π/Ω for a rectangular drive, 4τ for a Gaussian one.
inline double gate_time(const PulseShape& pulse) {
    return std::visit(
        [](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, RectangularPulse>) {
                if (!(p.omega > 0.0)) throw std::invalid_argument("gate_time: rectangular omega must be positive");
                return 2.0 * std::numbers::pi / p.omega;
            } else {
                if (!(p.omega_m > 0.0) || !(p.tau > 0.0))
                    throw std::invalid_argument("gate_time: Gaussian omega_m and tau must be positive");
                return 4.0 * p.tau;
            }
        },
        pulse);
}

inline void validate(const PulseShape& pulse) {
    std::visit(
        [](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, RectangularPulse>) {
                if (!(p.omega >= 0.0) || !std::isfinite(p.omega)) throw std::invalid_argument("pulse: omega must be finite and >= 0");
            } else {
                if (!(p.omega_m >= 0.0) || !std::isfinite(p.omega_m)) throw std::invalid_argument("pulse: omega_m must be finite and >= 0");
                if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw std::invalid_argument("pulse: tau must be finite and > 0");
            }
        },
        pulse);
}

// g/Ω at which the |1_m1_a⟩ amplitude returns to 1 at t = 2π/Ω.
inline double magic_ratio(int k) {
    if (k < 1) throw std::invalid_argument("magic_ratio: k must be >= 1");
    const double kk = static_cast<double>(k);
    return std::sqrt(4.0 * kk * kk - 1.0) / 2.0;
}

// ----------------------------------------------------------- system params

inline constexpr double kDefaultPolarizabilityRatio = 22.0;

struct SystemParams {
    double g = 1.0;         // atom-photon coupling
    double delta2 = 0.0;    // Stark shift of |r2⟩
    double polar_ratio = kDefaultPolarizabilityRatio;  // α2/α1
    double gamma1 = 0.0;    // decay |r1⟩ → |1_a⟩
    double gamma2 = 0.0;    // decay |r2⟩ → |1_a⟩
    double kappa = 0.0;     // cavity photon loss

    double delta1() const { return delta2 / polar_ratio; }

    bool has_decay() const { return gamma1 > 0.0 || gamma2 > 0.0 || kappa > 0.0; }

    void validate() const {
        if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("SystemParams: g must be positive");
        if (!(polar_ratio > 0.0)) throw std::invalid_argument("SystemParams: polar_ratio must be positive");
        if (!std::isfinite(delta2)) throw std::invalid_argument("SystemParams: delta2 must be finite");
        if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !(kappa >= 0.0))
            throw std::invalid_argument("SystemParams: decay rates must be >= 0");
    }
};

// ------------------------------------------------------------- operators

namespace ops {

inline CMatrix cavity_identity() { return CMatrix::identity(kPhotonLevels); }
inline CMatrix atom_identity() { return CMatrix::identity(kAtomLevels); }

// a on the truncated {|0_m⟩, |1_m⟩} Fock space
inline CMatrix annihilation() {
    CMatrix a(kPhotonLevels);
    a(0, 1) = 1.0;
    return a;
}

inline CMatrix creation() { return dagger(annihilation()); }

// |to⟩⟨from| on the atom
inline CMatrix atom_transition(Atom to, Atom from) {
    CMatrix m(kAtomLevels);
    m(static_cast<std::size_t>(to), static_cast<std::size_t>(from)) = 1.0;
    return m;
}

inline CMatrix atom_projector(Atom level) { return atom_transition(level, level); }

// photon-number operator on the full space
inline CMatrix photon_number() { return kron(matmul(creation(), annihilation()), atom_identity()); }

}  // namespace ops

// H(t) = fixed + Ω(t)·drive, with the pulse-independent pieces assembled once.
//   fixed = g(|r2⟩⟨r1| a + |r1⟩⟨r2| a†) + Δ1|r1⟩⟨r1| + Δ2|r2⟩⟨r2|
//   drive = ½(|1_a⟩⟨r1| + |r1⟩⟨1_a|) ⊗ I_cav
class Hamiltonian {
public:
    Hamiltonian(const SystemParams& params, PulseShape pulse) : pulse_(pulse), fixed_(kHilbertDim), drive_(kHilbertDim) {
        params.validate();
        validate(pulse_);
        using namespace ops;
        fixed_ += params.g * kron(annihilation(), atom_transition(Atom::R2, Atom::R1));
        fixed_ += params.g * kron(creation(), atom_transition(Atom::R1, Atom::R2));
        fixed_ += params.delta1() * kron(cavity_identity(), atom_projector(Atom::R1));
        fixed_ += params.delta2 * kron(cavity_identity(), atom_projector(Atom::R2));
        drive_ += 0.5 * kron(cavity_identity(), atom_transition(Atom::One, Atom::R1));
        drive_ += 0.5 * kron(cavity_identity(), atom_transition(Atom::R1, Atom::One));
    }

    CMatrix operator()(double t) const {
        CMatrix h = fixed_;
        h.add_scaled(drive_, rabi_frequency(pulse_, t));
        return h;
    }

    const PulseShape& pulse() const noexcept { return pulse_; }

private:
    PulseShape pulse_;
    CMatrix fixed_;
    CMatrix drive_;
};

inline CMatrix hamiltonian(const SystemParams& params, const PulseShape& pulse, double t) {
    if (t < 0.0) throw std::invalid_argument("hamiltonian: t must be >= 0");
    return Hamiltonian(params, pulse)(t);
}

// √γ1 |1_a⟩⟨r1|, √γ2 |1_a⟩⟨r2| (cavity identity) and √κ a (atom identity);
// operators with zero rate are left out.
inline std::vector<CMatrix> collapse_operators(const SystemParams& params) {
    params.validate();
    using namespace ops;
    std::vector<CMatrix> out;
    if (params.gamma1 > 0.0) out.push_back(std::sqrt(params.gamma1) * kron(cavity_identity(), atom_transition(Atom::One, Atom::R1)));
    if (params.gamma2 > 0.0) out.push_back(std::sqrt(params.gamma2) * kron(cavity_identity(), atom_transition(Atom::One, Atom::R2)));
    if (params.kappa > 0.0) out.push_back(std::sqrt(params.kappa) * kron(annihilation(), atom_identity()));
    return out;
}

}  // namespace rydgate
